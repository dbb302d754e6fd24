#include "fota/graph.hpp"

#include <algorithm>
#include <deque>

namespace fota::graph {

Digraph::Digraph(std::size_t n,
                 const std::vector<std::pair<Vertex, Vertex>>& edges) {
  offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) ++offsets_[u + 1];
  for (std::size_t i = 1; i <= n; ++i) offsets_[i] += offsets_[i - 1];
  targets_.resize(edges.size());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) targets_[fill[u]++] = v;
}

// Pearce's single-array variant of Tarjan: rindex doubles as the lowlink
// and, once a vertex is finished, holds its component number counted down
// from n - 1, so finished vertices never lower an active index.
Components strongly_connected(const Digraph& g, const Mask& mask) {
  const std::size_t n = g.size();
  Components out;
  constexpr Vertex kUnvisited = kNone;
  // masked-out vertices look finished, so the edge loop never reads the mask
  constexpr Vertex kExcluded = kNone - 1;
  std::vector<Vertex> rindex(n, kUnvisited);
  if (!mask.empty())
    for (Vertex v = 0; v < n; ++v)
      if (!mask[v]) rindex[v] = kExcluded;
  std::vector<Vertex> stack;
  struct Frame {
    Vertex v;
    std::uint32_t pos;
    bool root;
  };
  std::vector<Frame> frames;
  Vertex index = 0;
  Vertex c = static_cast<Vertex>(n) - 1;
  std::vector<std::uint32_t> sizes;

  auto enter = [&](Vertex v) {
    rindex[v] = index++;
    frames.push_back({v, 0, true});
  };

  for (Vertex r = 0; r < n; ++r) {
    if (rindex[r] != kUnvisited) continue;
    enter(r);
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto succ = g.successors(f.v);
      if (f.pos < succ.size()) {
        const Vertex w = succ[f.pos++];
        if (rindex[w] == kUnvisited) {
          enter(w);
        } else if (rindex[w] < rindex[f.v]) {
          rindex[f.v] = rindex[w];
          f.root = false;
        }
        continue;
      }
      const Frame done = f;
      frames.pop_back();
      if (done.root) {
        std::uint32_t size = 1;
        --index;
        while (!stack.empty() && rindex[done.v] <= rindex[stack.back()]) {
          rindex[stack.back()] = c;
          stack.pop_back();
          --index;
          ++size;
        }
        rindex[done.v] = c--;
        sizes.push_back(size);
      } else {
        stack.push_back(done.v);
      }
      if (!frames.empty()) {
        Frame& parent = frames.back();
        if (rindex[done.v] < rindex[parent.v]) {
          rindex[parent.v] = rindex[done.v];
          parent.root = false;
        }
      }
    }
  }

  // renumber so components appear in completion order, 0 first
  out.count = sizes.size();
  out.nontrivial.assign(out.count, 0);
  for (std::size_t i = 0; i < out.count; ++i) out.nontrivial[i] = sizes[i] > 1;
  const Vertex top = static_cast<Vertex>(n) - 1;
  for (Vertex v = 0; v < n; ++v) {
    if (rindex[v] == kExcluded) {
      rindex[v] = kNone;
      continue;
    }
    rindex[v] = top - rindex[v];
    if (!out.nontrivial[rindex[v]])
      for (Vertex x : g.successors(v))
        if (x == v) out.nontrivial[rindex[v]] = 1;
  }
  out.component = std::move(rindex);
  return out;
}

Search bfs(const Digraph& g, std::span<const Vertex> sources,
           const Mask& mask) {
  const std::size_t n = g.size();
  Search s;
  s.parent.assign(n, kNone);
  s.reached.assign(n, 0);
  std::vector<Vertex> queue;
  for (Vertex v : sources) {
    if (!admitted(mask, v) || s.reached[v]) continue;
    s.reached[v] = 1;
    queue.push_back(v);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (Vertex w : g.successors(v)) {
      if (s.reached[w] || !admitted(mask, w)) continue;
      s.reached[w] = 1;
      s.parent[w] = v;
      queue.push_back(w);
    }
  }
  return s;
}

std::vector<Vertex> path_to(const Search& s, Vertex v) {
  std::vector<Vertex> path;
  for (Vertex x = v; x != kNone; x = s.parent[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<std::vector<Vertex>> shortest_path(const Digraph& g, Vertex from,
                                                 Vertex to, const Mask& mask) {
  return shortest_path_if(g, from, to, [&](Vertex v) { return admitted(mask, v); });
}

std::optional<std::vector<Vertex>> closed_walk(const Digraph& g, Vertex start,
                                               std::span<const Vertex> through,
                                               const Mask& mask) {
  std::vector<Vertex> walk{start};
  Vertex cur = start;
  auto extend = [&](Vertex target) {
    auto p = shortest_path(g, cur, target, mask);
    if (!p) return false;
    walk.insert(walk.end(), p->begin() + 1, p->end());
    cur = target;
    return true;
  };
  for (Vertex t : through) {
    if (t == cur) continue;
    if (!extend(t)) return std::nullopt;
  }
  if (!extend(start)) return std::nullopt;
  walk.pop_back();
  return walk;
}

}  // namespace fota::graph
