#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fota::graph {

using Vertex = std::uint32_t;
inline constexpr Vertex kNone = std::numeric_limits<Vertex>::max();

/// Static directed graph in compressed sparse row form.
class Digraph {
 public:
  Digraph() = default;
  Digraph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges);
  /// Takes ready CSR arrays: successors of v are targets[offsets[v]..offsets[v+1]).
  Digraph(std::vector<std::uint32_t> offsets, std::vector<Vertex> targets)
      : offsets_(std::move(offsets)), targets_(std::move(targets)) {}

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return targets_.size(); }
  std::span<const Vertex> successors(Vertex v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<Vertex> targets_;
};

/// Vertex filter; an empty mask admits every vertex.
using Mask = std::vector<char>;

inline bool admitted(const Mask& mask, Vertex v) {
  return mask.empty() || mask[v] != 0;
}

struct Components {
  // component[v] is kNone for vertices outside the mask
  std::vector<Vertex> component;
  std::size_t count = 0;
  // nontrivial[c]: the component has an internal edge (size > 1 or self-loop)
  std::vector<char> nontrivial;
};

/// Strongly connected components of the subgraph induced by `mask`.
/// Iterative Tarjan; linear in vertices plus edges.
Components strongly_connected(const Digraph& g, const Mask& mask = {});

struct Search {
  std::vector<Vertex> parent;  // kNone for sources and unreached vertices
  std::vector<char> reached;
};

/// Breadth-first search from `sources` within `mask`.
Search bfs(const Digraph& g, std::span<const Vertex> sources,
           const Mask& mask = {});

/// Vertices from the root of a search tree down to `v` (inclusive).
std::vector<Vertex> path_to(const Search& s, Vertex v);

/// Shortest path with at least one edge from `from` to `to`, staying in `mask`.
/// The result lists the vertices visited, starting at `from` and ending at
/// `to`. Returns nullopt when no such path exists.
std::optional<std::vector<Vertex>> shortest_path(const Digraph& g, Vertex from,
                                                 Vertex to,
                                                 const Mask& mask = {});

/// shortest_path with an arbitrary vertex filter.
template <typename Admit>
std::optional<std::vector<Vertex>> shortest_path_if(const Digraph& g, Vertex from,
                                                    Vertex to, Admit admit) {
  // parent doubles as the seen set; the search starts from the successors
  // of `from` so the path has at least one edge
  std::vector<Vertex> parent(g.size(), kNone);
  std::vector<Vertex> queue;
  auto visit = [&](Vertex w, Vertex via) {
    if (parent[w] != kNone || !admit(w)) return;
    parent[w] = via;
    queue.push_back(w);
  };
  for (Vertex w : g.successors(from)) visit(w, from);
  for (std::size_t head = 0; head < queue.size() && parent[to] == kNone; ++head)
    for (Vertex w : g.successors(queue[head])) visit(w, queue[head]);
  if (parent[to] == kNone) return std::nullopt;
  std::vector<Vertex> path{to};
  for (Vertex x = parent[to]; x != from; x = parent[x]) path.push_back(x);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

/// Closed walk starting and ending at `start` that visits every vertex in
/// `through`, staying inside `mask`. The vector holds the walk without the
/// final repetition of `start`. Requires a strongly connected mask region.
std::optional<std::vector<Vertex>> closed_walk(const Digraph& g, Vertex start,
                                               std::span<const Vertex> through,
                                               const Mask& mask);

}  // namespace fota::graph
