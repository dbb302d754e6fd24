#include "fota/constructions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>
#include <unordered_map>

#include "fota/error.hpp"
#include "fota/structure.hpp"

namespace fota {

namespace {

void require_epsilon_free(const Automaton& a, const char* op) {
  if (a.has_epsilon())
    throw PreconditionError(std::string(op) + ": epsilon transitions present");
}

void require_same_alphabet(const Automaton& a, const Automaton& b,
                           const char* op) {
  if (!(a.alphabet() == b.alphabet()))
    throw InputError(std::string(op) + ": alphabet mismatch");
}

void require_buchi(const Automaton& a, const char* op) {
  if (a.acceptance().kind != AcceptanceKind::Buchi)
    throw PreconditionError(std::string(op) + ": Buchi acceptance required");
}

void check_budget(std::size_t n, const BuildOptions& o) {
  if (o.cancel && o.cancel->load(std::memory_order_relaxed)) throw Cancelled();
  if (n > o.max_states)
    throw BudgetExceeded("state budget of " + std::to_string(o.max_states) +
                         " exceeded");
}

// Worklist-driven construction of reachable product states keyed by K.
template <typename Key>
class Builder {
 public:
  State intern(const Key& k) {
    auto [it, fresh] = ids_.emplace(k, static_cast<State>(keys_.size()));
    if (fresh) keys_.push_back(k);
    return it->second;
  }
  bool pending() const { return next_ < keys_.size(); }
  std::pair<State, Key> pop() {
    const auto id = static_cast<State>(next_);
    return {id, keys_[next_++]};
  }
  std::size_t size() const { return keys_.size(); }
  const std::vector<Key>& keys() const { return keys_; }

 private:
  std::map<Key, State> ids_;
  std::vector<Key> keys_;
  std::size_t next_ = 0;
};

}  // namespace

Automaton finitary_restriction(const Automaton& a) {
  if (!a.is_deterministic() || !a.is_complete())
    throw PreconditionError(
        "finitary_restriction: deterministic complete automaton required");
  if (a.acceptance().finitary())
    throw PreconditionError("finitary_restriction: input is already finitary");
  Acceptance acc = a.acceptance();
  acc.mode = Mode::Finitary;
  return a.with_acceptance(std::move(acc));
}

Automaton intersect(const Automaton& a1, const Automaton& a2) {
  require_epsilon_free(a1, "intersect");
  require_epsilon_free(a2, "intersect");
  require_same_alphabet(a1, a2, "intersect");
  require_buchi(a1, "intersect");
  require_buchi(a2, "intersect");
  if (a1.acceptance().mode != a2.acceptance().mode)
    throw InputError("intersect: acceptance modes differ");

  const IdSet& f1 = a1.acceptance().accepting;
  const IdSet& f2 = a2.acceptance().accepting;
  using Key = std::tuple<State, State, int>;
  Builder<Key> b;
  std::vector<State> initial;
  for (State p : a1.initial())
    for (State q : a2.initial()) initial.push_back(b.intern({p, q, 1}));

  std::vector<Transition> transitions;
  while (b.pending()) {
    auto [id, key] = b.pop();
    auto [p, q, c] = key;
    int next = c;
    if (c == 1 && f1.contains(p)) next = 2;
    else if (c == 2 && f2.contains(q)) next = 1;
    for (Symbol s = 0; s < a1.alphabet().size(); ++s)
      for (State p2 : a1.successors(p, s))
        for (State q2 : a2.successors(q, s))
          transitions.push_back({id, s, b.intern({p2, q2, next})});
  }

  const std::size_t n = b.size();
  IdSet accepting(n);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    auto [p, q, c] = b.keys()[i];
    if (c == 1 && f1.contains(p)) accepting.insert(static_cast<State>(i));
    names.push_back("(" + a1.state_name(p) + "," + a2.state_name(q) + "," +
                    std::to_string(c) + ")");
  }
  return Automaton(a1.alphabet(), n, std::move(initial), std::move(transitions),
                   Acceptance::buchi(std::move(accepting), a1.acceptance().mode),
                   std::move(names));
}

Automaton unite(const Automaton& a1, const Automaton& a2) {
  require_epsilon_free(a1, "union");
  require_epsilon_free(a2, "union");
  require_same_alphabet(a1, a2, "union");
  const auto& x = a1.acceptance();
  const auto& y = a2.acceptance();
  if (x.kind != y.kind || x.mode != y.mode)
    throw InputError("union: acceptance conditions differ; convert with to_nfb first");

  const std::size_t n1 = a1.num_states();
  const std::size_t n = n1 + a2.num_states();
  auto shift = [&](const IdSet& s, std::size_t off) {
    IdSet out(n);
    for (State q : s.members()) out.insert(static_cast<State>(q + off));
    return out;
  };
  auto merge = [&](const IdSet& s1, const IdSet& s2) {
    IdSet out = shift(s1, 0);
    for (State q : s2.members()) out.insert(static_cast<State>(q + n1));
    return out;
  };

  std::vector<State> initial = a1.initial();
  for (State q : a2.initial()) initial.push_back(static_cast<State>(q + n1));
  std::vector<Transition> transitions = a1.transitions();
  for (const auto& t : a2.transitions())
    transitions.push_back({static_cast<State>(t.from + n1), t.label,
                           static_cast<State>(t.to + n1)});

  Acceptance acc;
  acc.kind = x.kind;
  acc.mode = x.mode;
  switch (x.kind) {
    case AcceptanceKind::Buchi:
    case AcceptanceKind::CoBuchi:
      acc.accepting = merge(x.accepting, y.accepting);
      break;
    case AcceptanceKind::Parity:
      acc.priorities = x.priorities;
      acc.priorities.insert(acc.priorities.end(), y.priorities.begin(),
                            y.priorities.end());
      break;
    case AcceptanceKind::Streett:
      // a run stays in one operand, so foreign pairs are never requested
      for (const auto& pr : x.pairs)
        acc.pairs.push_back({shift(pr.request, 0), shift(pr.grant, 0)});
      for (const auto& pr : y.pairs)
        acc.pairs.push_back({shift(pr.request, n1), shift(pr.grant, n1)});
      break;
    case AcceptanceKind::Conj:
      acc.good = merge(x.good, y.good);
      acc.bad = merge(x.bad, y.bad);
      break;
  }

  std::vector<std::string> names;
  for (State q = 0; q < n1; ++q) names.push_back("1:" + a1.state_name(q));
  for (State q = 0; q < a2.num_states(); ++q)
    names.push_back("2:" + a2.state_name(q));
  return Automaton(a1.alphabet(), n, std::move(initial), std::move(transitions),
                   std::move(acc), std::move(names));
}

std::vector<unsigned> encode_buchi_as_parity(const IdSet& f) {
  std::vector<unsigned> p(f.universe(), 1);
  for (State q : f.members()) p[q] = 0;
  return p;
}

std::vector<StreettPair> encode_parity_as_streett(
    const std::vector<unsigned>& priorities) {
  unsigned top = 0;
  for (unsigned p : priorities) top = std::max(top, p);
  const std::size_t n = priorities.size();
  std::vector<StreettPair> pairs;
  for (unsigned i = 0; i <= top / 2; ++i) {
    StreettPair pr{IdSet(n), IdSet(n)};
    for (State q = 0; q < n; ++q) {
      const unsigned p = priorities[q];
      if (p <= 2 * i + 1) pr.request.insert(q);
      if (p % 2 == 0 && p <= 2 * i) pr.grant.insert(q);
    }
    pairs.push_back(std::move(pr));
  }
  return pairs;
}

namespace {

// Phase 1 waits, phase 2 has no open request, phase 3 has one.
Automaton streett_gadget(const Automaton& a, const StreettPair& pr) {
  const std::size_t n = a.num_states();
  auto id = [&](State q, int phase) {
    return static_cast<State>(q * 3 + (phase - 1));
  };
  std::vector<State> initial;
  for (State q : a.initial()) initial.push_back(id(q, 1));

  std::vector<Transition> transitions;
  for (const auto& t : a.transitions()) {
    const State r = t.to;
    const bool req = pr.request.contains(r);
    const bool grant = pr.grant.contains(r);
    transitions.push_back({id(t.from, 1), t.label, id(r, 1)});
    transitions.push_back({id(t.from, 1), t.label, id(r, 2)});
    // a request that is also a grant is answered at distance 0
    transitions.push_back({id(t.from, 2), t.label, id(r, req && !grant ? 3 : 2)});
    transitions.push_back({id(t.from, 3), t.label, id(r, grant ? 2 : 3)});
  }

  IdSet accepting(n * 3);
  std::vector<std::string> names;
  for (State q = 0; q < n; ++q) {
    accepting.insert(id(q, 2));
    for (int phase = 1; phase <= 3; ++phase)
      names.push_back("(" + a.state_name(q) + "," + std::to_string(phase) + ")");
  }
  return Automaton(a.alphabet(), n * 3, std::move(initial),
                   std::move(transitions),
                   Acceptance::buchi(std::move(accepting), a.acceptance().mode),
                   std::move(names));
}

// All pairs must hold on one run, so the per-pair phases ride on a single
// copy of Q. A round-robin counter over the pairs degeneralizes, advancing
// when the watched pair is in phase 2 at the source, as in intersect.
Automaton multi_pair_gadget(const Automaton& a,
                            const std::vector<StreettPair>& pairs) {
  const std::size_t d = pairs.size();
  using Key = std::tuple<State, std::vector<std::uint8_t>, std::size_t>;
  Builder<Key> b;
  std::vector<State> initial;
  for (State q : a.initial())
    initial.push_back(b.intern({q, std::vector<std::uint8_t>(d, 1), 0}));

  std::vector<Transition> transitions;
  std::vector<std::vector<std::uint8_t>> options(d);
  std::vector<std::uint8_t> phases(d);
  while (b.pending()) {
    auto [id, key] = b.pop();
    const auto& [q, from, c] = key;
    const std::size_t next = from[c] == 2 ? (c + 1) % d : c;
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      for (State r : a.successors(q, s)) {
        for (std::size_t j = 0; j < d; ++j) {
          const bool req = pairs[j].request.contains(r);
          const bool grant = pairs[j].grant.contains(r);
          if (from[j] == 1) options[j] = {1, 2};
          else if (from[j] == 2) options[j] = {std::uint8_t(req && !grant ? 3 : 2)};
          else options[j] = {std::uint8_t(grant ? 2 : 3)};
        }
        // odometer over the phase choices
        std::vector<std::size_t> pick(d, 0);
        while (true) {
          for (std::size_t j = 0; j < d; ++j) phases[j] = options[j][pick[j]];
          transitions.push_back({id, s, b.intern({r, phases, next})});
          std::size_t j = 0;
          while (j < d && ++pick[j] == options[j].size()) pick[j++] = 0;
          if (j == d) break;
        }
      }
  }

  const std::size_t n = b.size();
  IdSet accepting(n);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [q, ph, c] = b.keys()[i];
    if (c == 0 && ph[0] == 2) accepting.insert(static_cast<State>(i));
    std::string name = "(" + a.state_name(q) + ",";
    for (auto p : ph) name += static_cast<char>('0' + p);
    names.push_back(name + "," + std::to_string(c) + ")");
  }
  return Automaton(a.alphabet(), n, std::move(initial), std::move(transitions),
                   Acceptance::buchi(std::move(accepting), a.acceptance().mode),
                   std::move(names));
}

}  // namespace

Automaton streett_to_buchi(const Automaton& a) {
  require_epsilon_free(a, "streett_to_buchi");
  if (a.acceptance().kind != AcceptanceKind::Streett)
    throw PreconditionError("streett_to_buchi: Streett acceptance required");
  const auto& pairs = a.acceptance().pairs;
  if (pairs.empty())
    return a.with_acceptance(Acceptance::buchi(IdSet::full(a.num_states()),
                                               a.acceptance().mode));
  if (pairs.size() == 1) return streett_gadget(a, pairs.front());
  return multi_pair_gadget(a, pairs);
}

Automaton to_nfb(const Automaton& a) {
  require_epsilon_free(a, "to_nfb");
  const auto& acc = a.acceptance();
  if (!acc.finitary())
    throw PreconditionError("to_nfb: finitary acceptance required");
  switch (acc.kind) {
    case AcceptanceKind::Buchi:
      return a;
    case AcceptanceKind::Parity:
      return streett_to_buchi(a.with_acceptance(
          Acceptance::streett(encode_parity_as_streett(acc.priorities))));
    case AcceptanceKind::Streett:
      return streett_to_buchi(a);
    case AcceptanceKind::CoBuchi: {
      std::vector<unsigned> p(a.num_states(), 2);
      for (State q : acc.accepting.members()) p[q] = 1;
      return to_nfb(a.with_acceptance(Acceptance::parity(std::move(p))));
    }
    case AcceptanceKind::Conj:
      break;
  }
  throw PreconditionError("to_nfb: Conj acceptance has no Buchi normal form");
}

namespace {

struct SubsetTable {
  std::map<std::vector<State>, std::uint32_t> ids;
  std::vector<std::vector<State>> sets;

  std::uint32_t intern(std::vector<State> s) {
    auto [it, fresh] = ids.emplace(s, static_cast<std::uint32_t>(sets.size()));
    if (fresh) sets.push_back(std::move(s));
    return it->second;
  }
};

}  // namespace

Automaton inclusion_product(const Automaton& a, const Automaton& b,
                            const BuildOptions& options) {
  require_epsilon_free(a, "inclusion_product");
  require_epsilon_free(b, "inclusion_product");
  require_same_alphabet(a, b, "inclusion_product");
  require_buchi(a, "inclusion_product");
  require_buchi(b, "inclusion_product");

  const std::size_t sigma = a.alphabet().size();
  SubsetTable subsets;
  // successor subset per (subset id, symbol), filled lazily
  std::vector<std::vector<std::uint32_t>> step;
  auto image = [&](std::uint32_t sid, Symbol s) {
    if (step.size() <= sid) step.resize(sid + 1);
    auto& row = step[sid];
    if (row.empty()) row.assign(sigma, ~0u);
    if (row[s] == ~0u) {
      std::vector<State> out;
      for (State q : subsets.sets[sid])
        for (State r : b.successors(q, s)) out.push_back(r);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      const auto id = subsets.intern(std::move(out));
      step[sid][s] = id;
    }
    return step[sid][s];
  };

  using Key = std::pair<State, std::uint32_t>;
  Builder<Key> builder;
  const auto start = subsets.intern(b.initial());
  std::vector<State> initial;
  for (State s0 : a.initial()) initial.push_back(builder.intern({s0, start}));

  std::vector<Transition> transitions;
  while (builder.pending()) {
    check_budget(builder.size(), options);
    auto [id, key] = builder.pop();
    for (Symbol s = 0; s < sigma; ++s) {
      auto succ = a.successors(key.first, s);
      if (succ.empty()) continue;
      const auto next = image(key.second, s);
      for (State r : succ) transitions.push_back({id, s, builder.intern({r, next})});
    }
  }

  const std::size_t n = builder.size();
  IdSet good(n), bad(n);
  std::vector<std::string> names;
  const IdSet& fa = a.acceptance().accepting;
  const IdSet& fb = b.acceptance().accepting;
  for (std::size_t i = 0; i < n; ++i) {
    auto [s, sid] = builder.keys()[i];
    const auto& set = subsets.sets[sid];
    if (fa.contains(s)) good.insert(static_cast<State>(i));
    if (std::any_of(set.begin(), set.end(), [&](State q) { return fb.contains(q); }))
      bad.insert(static_cast<State>(i));
    std::string nm = "(" + a.state_name(s) + ",{";
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (j) nm += ",";
      nm += b.state_name(set[j]);
    }
    names.push_back(nm + "})");
  }
  return Automaton(a.alphabet(), n, std::move(initial), std::move(transitions),
                   Acceptance::conj(std::move(good), std::move(bad)),
                   std::move(names));
}

}  // namespace fota
