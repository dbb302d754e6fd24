#include "fota/semantics.hpp"

#include <algorithm>
#include <numeric>

#include "fota/error.hpp"
#include "fota/graph.hpp"

namespace fota {

namespace {

// Positions k..horizon(k) cover every distinct (position mod period) that
// can follow k, so a scan over them decides "never again".
std::size_t horizon(const PeriodicSequence& w, std::size_t k) {
  const std::size_t rest = k < w.spoke.size() ? w.spoke.size() - k : 0;
  return k + rest + w.cycle.size();
}

template <typename Pred>
ExtendedNat scan(const PeriodicSequence& w, std::size_t k, Pred&& pred) {
  const std::size_t end = horizon(w, k);
  for (std::size_t t = k; t < end; ++t)
    if (pred(w.at(t))) return ExtendedNat(t - k);
  return ExtendedNat::infinity();
}

unsigned priority_of(const std::vector<unsigned>& p, std::uint32_t id) {
  if (id >= p.size()) throw InputError("priority map does not cover id " + std::to_string(id));
  return p[id];
}

}  // namespace

ExtendedNat next_distance(const PeriodicSequence& w, const IdSet& f,
                          std::size_t k) {
  return scan(w, k, [&](std::uint32_t x) { return f.contains(x); });
}

ExtendedNat streett_distance(const PeriodicSequence& w,
                             const std::vector<StreettPair>& pairs,
                             std::size_t k) {
  ExtendedNat d = 0;
  const std::uint32_t x = w.at(k);
  for (const auto& pr : pairs) {
    if (!pr.request.contains(x)) continue;
    d = std::max(d, next_distance(w, pr.grant, k));
  }
  return d;
}

ExtendedNat parity_distance(const PeriodicSequence& w,
                            const std::vector<unsigned>& priorities,
                            std::size_t k) {
  const unsigned bound = priority_of(priorities, w.at(k));
  return scan(w, k, [&](std::uint32_t x) {
    const unsigned p = priority_of(priorities, x);
    return p % 2 == 0 && p <= bound;
  });
}

ExtendedNat limsup_distance(const PeriodicSequence& w, const Acceptance& acc) {
  auto dist = [&](std::size_t k) -> ExtendedNat {
    switch (acc.kind) {
      case AcceptanceKind::Buchi: return next_distance(w, acc.accepting, k);
      case AcceptanceKind::Parity: return parity_distance(w, acc.priorities, k);
      case AcceptanceKind::Streett: return streett_distance(w, acc.pairs, k);
      default:
        throw PreconditionError(
            "limsup_distance: distances are defined for Buchi, parity and "
            "Streett conditions only");
    }
  };
  ExtendedNat worst = 0;
  const std::size_t start = w.spoke.size();
  for (std::size_t k = start; k < start + w.cycle.size(); ++k) {
    const ExtendedNat d = dist(k);
    if (d.is_infinite()) return d;
    worst = std::max(worst, d);
  }
  return worst;
}

namespace {

bool touches(const std::vector<State>& beta, const IdSet& s) {
  return std::any_of(beta.begin(), beta.end(),
                     [&](State q) { return s.contains(q); });
}

bool classical_accepts(const std::vector<State>& beta, const Acceptance& acc) {
  switch (acc.kind) {
    case AcceptanceKind::Buchi: return touches(beta, acc.accepting);
    case AcceptanceKind::CoBuchi: return !touches(beta, acc.accepting);
    case AcceptanceKind::Parity: {
      unsigned low = ~0u;
      for (State q : beta) low = std::min(low, priority_of(acc.priorities, q));
      return low % 2 == 0;
    }
    case AcceptanceKind::Streett:
      for (const auto& pr : acc.pairs)
        if (touches(beta, pr.request) && !touches(beta, pr.grant)) return false;
      return true;
    case AcceptanceKind::Conj:
      return touches(beta, acc.good) && !touches(beta, acc.bad);
  }
  return false;
}

}  // namespace

bool accepts_run(const LassoRun& rho, const Acceptance& acc) {
  if (rho.beta.empty()) return false;
  if (!acc.finitary()) return classical_accepts(rho.beta, acc);

  const PeriodicSequence seq(rho);
  switch (acc.kind) {
    case AcceptanceKind::Buchi:
    case AcceptanceKind::Parity:
    case AcceptanceKind::Streett:
      return limsup_distance(seq, acc).is_finite() &&
             classical_accepts(rho.beta, acc);
    case AcceptanceKind::CoBuchi:
      // complement of finitary Buchi on F
      return limsup_distance(seq, Acceptance::buchi(acc.accepting)).is_infinite();
    case AcceptanceKind::Conj:
      return limsup_distance(seq, Acceptance::buchi(acc.good)).is_finite() &&
             limsup_distance(seq, Acceptance::buchi(acc.bad)).is_infinite();
  }
  return false;
}

bool is_run_on(const Automaton& a, const LassoWord& w, const LassoRun& rho) {
  if (rho.beta.empty() || w.cycle.empty()) return false;
  const PeriodicSequence run(rho);
  for (State q : rho.alpha)
    if (q >= a.num_states()) return false;
  for (State q : rho.beta)
    if (q >= a.num_states()) return false;
  if (!a.is_initial(run.at(0))) return false;
  const std::size_t start = std::max(rho.alpha.size(), w.spoke.size());
  const std::size_t period = std::lcm(rho.beta.size(), w.cycle.size());
  for (std::size_t t = 0; t < start + period; ++t) {
    const Symbol s = w.at(t);
    if (s >= a.alphabet().size()) return false;
    auto succ = a.successors(run.at(t), s);
    if (std::find(succ.begin(), succ.end(), run.at(t + 1)) == succ.end())
      return false;
  }
  return true;
}

namespace {

using graph::Vertex;

struct Product {
  std::size_t length = 0;  // lasso graph size |u| + |v|
  graph::Digraph g;
  State state(Vertex v) const { return static_cast<State>(v / length); }
};

Product lasso_product(const Automaton& a, const LassoWord& w) {
  Product p;
  p.length = w.spoke.size() + w.cycle.size();
  const std::size_t L = p.length;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (State q = 0; q < a.num_states(); ++q) {
    for (std::size_t i = 0; i < L; ++i) {
      const Symbol s = w.at(i);
      const std::size_t next = i + 1 < L ? i + 1 : w.spoke.size();
      for (State r : a.successors(q, s))
        edges.emplace_back(static_cast<Vertex>(q * L + i),
                           static_cast<Vertex>(r * L + next));
    }
  }
  p.g = graph::Digraph(a.num_states() * L, edges);
  return p;
}

struct GoodRegion {
  graph::Mask region;
  std::vector<Vertex> members;
  std::vector<Vertex> through;
};

std::vector<std::vector<Vertex>> nontrivial_components(
    const graph::Digraph& g, const graph::Mask& mask) {
  const auto comps = graph::strongly_connected(g, mask);
  std::vector<std::vector<Vertex>> out(comps.count);
  for (Vertex v = 0; v < g.size(); ++v)
    if (comps.component[v] != graph::kNone) out[comps.component[v]].push_back(v);
  std::vector<std::vector<Vertex>> result;
  for (std::size_t c = 0; c < comps.count; ++c)
    if (comps.nontrivial[c]) result.push_back(std::move(out[c]));
  std::sort(result.begin(), result.end());
  return result;
}

GoodRegion make_region(std::size_t n, std::vector<Vertex> members,
                       std::vector<Vertex> through) {
  GoodRegion r;
  r.region.assign(n, 0);
  for (Vertex v : members) r.region[v] = 1;
  r.members = std::move(members);
  r.through = std::move(through);
  return r;
}

// Finds a component inside `mask` containing a vertex selected by `pick`.
template <typename Pick>
std::optional<GoodRegion> component_with(const Product& p,
                                         const graph::Mask& mask, Pick&& pick) {
  for (auto& comp : nontrivial_components(p.g, mask)) {
    for (Vertex v : comp)
      if (pick(v)) return make_region(p.g.size(), comp, {v});
  }
  return std::nullopt;
}

std::optional<GoodRegion> find_good(const Product& p, const Acceptance& acc,
                                    const graph::Mask& reachable) {
  const std::size_t N = p.g.size();
  auto restricted = [&](auto&& keep) {
    graph::Mask m(N, 0);
    for (Vertex v = 0; v < N; ++v) m[v] = reachable[v] && keep(p.state(v));
    return m;
  };
  auto any = [](Vertex) { return true; };

  switch (acc.kind) {
    case AcceptanceKind::Buchi:
      return component_with(p, reachable, [&](Vertex v) {
        return acc.accepting.contains(p.state(v));
      });
    case AcceptanceKind::CoBuchi:
      return component_with(
          p, restricted([&](State q) { return !acc.accepting.contains(q); }),
          any);
    case AcceptanceKind::Conj:
      return component_with(
          p, restricted([&](State q) { return !acc.bad.contains(q); }),
          [&](Vertex v) { return acc.good.contains(p.state(v)); });
    case AcceptanceKind::Parity: {
      unsigned top = 0;
      for (unsigned x : acc.priorities) top = std::max(top, x);
      for (unsigned d = 0; d <= top; d += 2) {
        auto found = component_with(
            p, restricted([&](State q) { return acc.priorities[q] >= d; }),
            [&](Vertex v) { return acc.priorities[p.state(v)] == d; });
        if (found) return found;
      }
      return std::nullopt;
    }
    case AcceptanceKind::Streett: {
      std::vector<graph::Mask> work{reachable};
      while (!work.empty()) {
        graph::Mask mask = std::move(work.back());
        work.pop_back();
        for (auto& comp : nontrivial_components(p.g, mask)) {
          graph::Mask sub(N, 0);
          for (Vertex v : comp) sub[v] = 1;
          bool refined = false;
          for (const auto& pr : acc.pairs) {
            bool req = false, grant = false;
            for (Vertex v : comp) {
              req = req || pr.request.contains(p.state(v));
              grant = grant || pr.grant.contains(p.state(v));
            }
            if (req && !grant) {
              refined = true;
              for (Vertex v : comp)
                if (pr.request.contains(p.state(v))) sub[v] = 0;
            }
          }
          if (!refined) return make_region(N, comp, comp);
          work.push_back(std::move(sub));
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

Membership member(const Automaton& a, const LassoWord& w) {
  if (a.has_epsilon())
    throw PreconditionError("member: automaton has epsilon transitions");
  if (w.cycle.empty()) throw InputError("lasso cycle must be nonempty");
  for (Symbol s : w.spoke)
    if (s >= a.alphabet().size()) throw InputError("lasso symbol not in alphabet");
  for (Symbol s : w.cycle)
    if (s >= a.alphabet().size()) throw InputError("lasso symbol not in alphabet");

  Membership out;
  if (a.num_states() == 0 || a.initial().empty()) return out;

  const Product p = lasso_product(a, w);
  std::vector<Vertex> sources;
  for (State q : a.initial()) sources.push_back(static_cast<Vertex>(q * p.length));
  const auto search = graph::bfs(p.g, sources);

  const auto good = find_good(p, a.acceptance(), search.reached);
  if (!good) return out;

  // entry point: region vertex with the shortest path from a source
  Vertex entry = graph::kNone;
  std::size_t best = ~std::size_t{0};
  for (Vertex v : good->members) {
    const std::size_t len = graph::path_to(search, v).size();
    if (len < best) {
      best = len;
      entry = v;
    }
  }
  const auto prefix = graph::path_to(search, entry);
  const auto walk = graph::closed_walk(p.g, entry, good->through, good->region);
  if (!walk) throw Error("member: internal error, no cycle in good region");

  LassoRun run;
  for (std::size_t i = 0; i + 1 < prefix.size(); ++i)
    run.alpha.push_back(p.state(prefix[i]));
  for (Vertex v : *walk) run.beta.push_back(p.state(v));
  out.accepted = true;
  out.run = std::move(run);
  return out;
}

}  // namespace fota
