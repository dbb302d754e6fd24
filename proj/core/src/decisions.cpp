#include "fota/decisions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "fota/error.hpp"
#include "fota/graph.hpp"

namespace fota {

namespace {

using graph::Vertex;

graph::Digraph state_graph(const Automaton& a) {
  const std::size_t n = a.num_states();
  std::vector<std::uint32_t> offsets;
  std::vector<Vertex> targets;
  offsets.reserve(n + 1);
  targets.reserve(a.transitions().size());
  offsets.push_back(0);
  for (State q = 0; q < n; ++q) {
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      auto succ = a.successors(q, s);
      targets.insert(targets.end(), succ.begin(), succ.end());
    }
    offsets.push_back(static_cast<std::uint32_t>(targets.size()));
  }
  return graph::Digraph(std::move(offsets), std::move(targets));
}

std::vector<Symbol> label_path(const Automaton& a,
                               const std::vector<Vertex>& path) {
  std::vector<Symbol> word;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      auto succ = a.successors(path[i], s);
      if (std::binary_search(succ.begin(), succ.end(), path[i + 1])) {
        word.push_back(s);
        break;
      }
    }
  }
  return word;
}

void poll(const DecisionOptions& o) {
  if (o.cancel && o.cancel->load(std::memory_order_relaxed)) throw Cancelled();
}

}  // namespace

Verdict emptiness_conj(const Automaton& a) {
  if (a.acceptance().kind != AcceptanceKind::Conj)
    throw PreconditionError("emptiness_conj: Conj acceptance required");
  if (a.has_epsilon())
    throw PreconditionError("emptiness_conj: epsilon transitions present");

  const auto& acc = a.acceptance();
  const auto g = state_graph(a);
  const auto search = graph::bfs(g, a.initial());
  const std::size_t n = a.num_states();
  graph::Mask mask(n, 0);
  for (State q = 0; q < n; ++q) mask[q] = search.reached[q] && !acc.bad.contains(q);
  const auto comps = graph::strongly_connected(g, mask);

  State pick = graph::kNone;
  for (State q = 0; q < n && pick == graph::kNone; ++q)
    if (mask[q] && acc.good.contains(q) && comps.nontrivial[comps.component[q]])
      pick = q;
  if (pick == graph::kNone) return {true, std::nullopt};

  const Vertex home = comps.component[pick];
  const auto cycle = graph::shortest_path_if(
      g, pick, pick, [&](Vertex v) { return comps.component[v] == home; });
  if (!cycle) throw Error("emptiness_conj: internal error, missing cycle");

  LassoWord w;
  w.spoke = label_path(a, graph::path_to(search, pick));
  w.cycle = label_path(a, *cycle);
  return {false, std::move(w)};
}

Verdict is_empty(const Automaton& a, const DecisionOptions& options) {
  const auto& acc = a.acceptance();
  const std::size_t n = a.num_states();
  switch (acc.kind) {
    case AcceptanceKind::Buchi:
      return emptiness_conj(
          a.with_acceptance(Acceptance::conj(acc.accepting, IdSet(n), acc.mode)));
    case AcceptanceKind::CoBuchi:
      return emptiness_conj(a.with_acceptance(
          Acceptance::conj(IdSet::full(n), acc.accepting, acc.mode)));
    case AcceptanceKind::Conj:
      return emptiness_conj(a);
    case AcceptanceKind::Parity:
    case AcceptanceKind::Streett:
      if (!acc.finitary())
        throw PreconditionError(
            "is_empty: classical parity and Streett automata are not supported");
      poll(options);
      return is_empty(to_nfb(a), options);
  }
  throw PreconditionError("is_empty: unsupported acceptance");
}

namespace {

// Transition profiles of a Buchi automaton: entry [p][q] is 0 when the word
// has no path p -> q, 2 when some such path enters an accepting state, and
// 1 otherwise. Element 0 is the profile of the empty word.
class ProfileMonoid {
 public:
  using Matrix = std::vector<std::uint8_t>;

  ProfileMonoid(const Automaton& b, const DecisionOptions& options)
      : n_(b.num_states()), sigma_(b.alphabet().size()) {
    const IdSet& f = b.acceptance().accepting;
    Matrix id(n_ * n_, 0);
    for (std::size_t p = 0; p < n_; ++p) id[p * n_ + p] = 1;
    intern(std::move(id));
    std::vector<Matrix> letters;
    for (Symbol s = 0; s < sigma_; ++s) {
      Matrix m(n_ * n_, 0);
      for (const auto& t : b.transitions())
        if (t.label == s) m[t.from * n_ + t.to] = f.contains(t.to) ? 2 : 1;
      letters.push_back(std::move(m));
    }
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      poll(options);
      if (elems_.size() > options.max_states)
        throw BudgetExceeded("inclusion: transition-profile budget exceeded");
      std::vector<std::uint32_t> row(sigma_);
      for (Symbol s = 0; s < sigma_; ++s)
        row[s] = intern(multiply(elems_[i], letters[s]));
      rmul_.push_back(std::move(row));
    }
  }

  std::size_t size() const { return elems_.size(); }
  std::uint32_t step(std::uint32_t m, Symbol s) const { return rmul_[m][s]; }
  const Matrix& at(std::uint32_t m) const { return elems_[m]; }

  Matrix multiply(const Matrix& x, const Matrix& y) const {
    Matrix out(n_ * n_, 0);
    for (std::size_t p = 0; p < n_; ++p)
      for (std::size_t r = 0; r < n_; ++r) {
        const auto xr = x[p * n_ + r];
        if (!xr) continue;
        for (std::size_t q = 0; q < n_; ++q) {
          const auto yq = y[r * n_ + q];
          if (!yq) continue;
          auto& cell = out[p * n_ + q];
          cell = std::max<std::uint8_t>(cell, std::max(xr, yq));
        }
      }
    return out;
  }

  bool idempotent(std::uint32_t e) const {
    return multiply(elems_[e], elems_[e]) == elems_[e];
  }

  // Does b accept a lasso whose spoke has profile `spoke` and whose cycle
  // has idempotent profile `e`, given spoke already absorbs one e?
  bool accepts(const Automaton& b, const Matrix& spoke, const Matrix& e) const {
    for (State q0 : b.initial())
      for (std::size_t r = 0; r < n_; ++r)
        if (spoke[q0 * n_ + r] >= 1 && e[r * n_ + r] == 2) return true;
    return false;
  }

 private:
  std::uint32_t intern(Matrix m) {
    auto [it, fresh] = index_.emplace(m, static_cast<std::uint32_t>(elems_.size()));
    if (fresh) elems_.push_back(std::move(m));
    return it->second;
  }

  std::size_t n_;
  std::size_t sigma_;
  std::vector<Matrix> elems_;
  std::map<Matrix, std::uint32_t> index_;
  std::vector<std::vector<std::uint32_t>> rmul_;
};

constexpr std::uint32_t kNoParent = ~0u;

struct Trail {
  std::vector<std::uint32_t> parent;
  std::vector<Symbol> letter;
  std::vector<char> seen;

  explicit Trail(std::size_t n) : parent(n, kNoParent), letter(n, 0), seen(n, 0) {}

  // roots carry kEpsilon (empty word) or their first letter without parent
  std::vector<Symbol> word(std::uint32_t node) const {
    std::vector<Symbol> w;
    for (std::uint32_t x = node; letter[x] != kEpsilon; x = parent[x]) {
      w.push_back(letter[x]);
      if (parent[x] == kNoParent) break;
    }
    std::reverse(w.begin(), w.end());
    return w;
  }
};

// Complete lasso-inclusion check for Buchi automata via Ramsey-style
// transition profiles of b.
Verdict profile_inclusion(const Automaton& a, const Automaton& b,
                          const DecisionOptions& options) {
  const ProfileMonoid monoid(b, options);
  const std::size_t na = a.num_states();
  const std::size_t M = monoid.size();
  const std::size_t sigma = a.alphabet().size();
  const IdSet& fa = a.acceptance().accepting;
  if (na * M * 2 > options.max_states * 4)
    throw BudgetExceeded("inclusion: product with transition profiles too large");

  // spoke states (q, s), s the profile of the word read so far
  Trail spoke(na * M);
  std::deque<std::uint32_t> queue;
  for (State q : a.initial()) {
    const auto node = static_cast<std::uint32_t>(q * M);
    if (spoke.seen[node]) continue;
    spoke.seen[node] = 1;
    spoke.letter[node] = kEpsilon;
    queue.push_back(node);
  }
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    const State q = x / M;
    const auto m = static_cast<std::uint32_t>(x % M);
    for (Symbol s = 0; s < sigma; ++s)
      for (State r : a.successors(q, s)) {
        const auto y = static_cast<std::uint32_t>(r * M + monoid.step(m, s));
        if (spoke.seen[y]) continue;
        spoke.seen[y] = 1;
        spoke.parent[y] = x;
        spoke.letter[y] = s;
        queue.push_back(y);
      }
  }

  // segment edges q --(profile e, flag)--> q' for nonempty words
  auto seg_node = [&](State q, std::uint32_t m, int flag) {
    return static_cast<std::uint32_t>((q * M + m) * 2 + flag);
  };
  std::vector<Trail> segments;
  segments.reserve(na);
  struct Edge {
    State from, to;
    bool flag;
    std::uint32_t node;  // in segments[from]
  };
  std::vector<std::vector<Edge>> by_profile(M);
  for (State q = 0; q < na; ++q) {
    poll(options);
    Trail t(na * M * 2);
    for (Symbol s = 0; s < sigma; ++s)
      for (State r : a.successors(q, s)) {
        const auto y = seg_node(r, monoid.step(0, s), fa.contains(r) ? 1 : 0);
        if (t.seen[y]) continue;
        t.seen[y] = 1;
        t.letter[y] = s;
        queue.push_back(y);
      }
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop_front();
      const int flag = static_cast<int>(x % 2);
      const State p = static_cast<State>(x / 2 / M);
      const auto m = static_cast<std::uint32_t>(x / 2 % M);
      by_profile[m].push_back({q, p, flag == 1, x});
      for (Symbol s = 0; s < sigma; ++s)
        for (State r : a.successors(p, s)) {
          const int f2 = flag | (fa.contains(r) ? 1 : 0);
          const auto y = seg_node(r, monoid.step(m, s), f2);
          if (t.seen[y]) continue;
          t.seen[y] = 1;
          t.parent[y] = x;
          t.letter[y] = s;
          queue.push_back(y);
        }
    }
    segments.push_back(std::move(t));
  }

  for (std::uint32_t e = 0; e < M; ++e) {
    if (by_profile[e].empty() || !monoid.idempotent(e)) continue;
    poll(options);
    const auto& edges = by_profile[e];
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (const auto& ed : edges) pairs.emplace_back(ed.from, ed.to);
    const graph::Digraph g(na, pairs);
    const auto comps = graph::strongly_connected(g);

    // flagged edges inside a component, indexed by source
    std::vector<const Edge*> flagged(na, nullptr);
    for (const auto& ed : edges)
      if (ed.flag && comps.component[ed.from] == comps.component[ed.to] &&
          !flagged[ed.from])
        flagged[ed.from] = &ed;
    std::vector<char> good_comp(comps.count, 0);
    for (State q = 0; q < na; ++q)
      if (flagged[q]) good_comp[comps.component[q]] = 1;

    // can_reach[q]: a path of at least one edge from q into a good component
    std::vector<char> can_reach(na, 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& ed : edges)
        if (!can_reach[ed.from] &&
            (good_comp[comps.component[ed.to]] || can_reach[ed.to])) {
          can_reach[ed.from] = 1;
          changed = true;
        }
    }

    const auto& em = monoid.at(e);
    for (std::uint32_t x = 0; x < spoke.seen.size(); ++x) {
      if (!spoke.seen[x]) continue;
      const State q = x / M;
      if (!can_reach[q]) continue;
      const auto s = static_cast<std::uint32_t>(x % M);
      if (monoid.accepts(b, monoid.multiply(monoid.at(s), em), em)) continue;

      // counterexample: spoke word, path into the component, flagged cycle
      auto edge_word = [&](State from, State to, bool need_flag) {
        for (const auto& ed : edges)
          if (ed.from == from && ed.to == to && (!need_flag || ed.flag))
            return segments[from].word(ed.node);
        throw Error("inclusion: internal error, missing segment");
      };
      Vertex target = graph::kNone;
      std::vector<Vertex> lead;
      for (State c = 0; c < na && target == graph::kNone; ++c) {
        if (!flagged[c]) continue;
        if (auto p = graph::shortest_path(g, q, c)) {
          target = c;
          lead = std::move(*p);
        }
      }
      if (target == graph::kNone) continue;
      const Edge* loop = flagged[target];
      graph::Mask region(na, 0);
      for (State r = 0; r < na; ++r)
        region[r] = comps.component[r] == comps.component[target];

      LassoWord w;
      w.spoke = spoke.word(x);
      for (std::size_t i = 0; i + 1 < lead.size(); ++i) {
        auto part = edge_word(lead[i], lead[i + 1], false);
        w.spoke.insert(w.spoke.end(), part.begin(), part.end());
      }
      w.cycle = segments[loop->from].word(loop->node);
      if (loop->to != target) {
        auto back = graph::shortest_path(g, loop->to, target, region);
        if (!back) throw Error("inclusion: internal error, broken component");
        for (std::size_t i = 0; i + 1 < back->size(); ++i) {
          auto part = edge_word((*back)[i], (*back)[i + 1], false);
          w.cycle.insert(w.cycle.end(), part.begin(), part.end());
        }
      }
      return {false, std::move(w)};
    }
  }
  return {true, std::nullopt};
}

Automaton normalize(const Automaton& a) {
  if (a.has_epsilon())
    throw PreconditionError("inclusion: epsilon transitions present");
  Acceptance acc = a.acceptance();
  if (acc.kind == AcceptanceKind::Conj)
    throw PreconditionError("inclusion: Conj acceptance is not supported");
  // on ultimately periodic words both modes define the same language
  if (!acc.finitary()) {
    acc.mode = Mode::Finitary;
    return normalize(a.with_acceptance(std::move(acc)));
  }
  return to_nfb(a);
}

}  // namespace

Verdict inclusion(const Automaton& a, const Automaton& b,
                  const DecisionOptions& options) {
  if (!(a.alphabet() == b.alphabet()))
    throw InputError("inclusion: alphabet mismatch");
  const Automaton na = normalize(a);
  const Automaton nb = normalize(b);
  poll(options);
  const auto product = inclusion_product(na, nb, options);
  auto r = emptiness_conj(product);
  if (!r.holds) return {false, std::move(r.witness)};
  if (nb.is_deterministic() || nb.initial().empty()) return {true, std::nullopt};
  return profile_inclusion(na, nb, options);
}

Automaton universal_automaton(const Alphabet& alphabet) {
  std::vector<Transition> loops;
  for (Symbol s = 0; s < alphabet.size(); ++s) loops.push_back({0, s, 0});
  return Automaton(alphabet, 1, {0}, std::move(loops),
                   Acceptance::buchi(IdSet(1, {0})), {"u"});
}

Verdict universality(const Automaton& a, const DecisionOptions& options) {
  return inclusion(universal_automaton(a.alphabet()), a, options);
}

Verdict equivalence(const Automaton& a, const Automaton& b,
                    const DecisionOptions& options) {
  auto left = inclusion(a, b, options);
  if (!left.holds) return left;
  return inclusion(b, a, options);
}

}  // namespace fota
