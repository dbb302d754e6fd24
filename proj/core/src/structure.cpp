#include "fota/structure.hpp"

#include <algorithm>
#include <deque>

#include "fota/error.hpp"

namespace fota {

namespace {

std::string fresh_name(const Automaton& a, std::string base) {
  while (a.find_state(base)) base += "_";
  return base;
}

}  // namespace

Automaton complete(const Automaton& a) {
  if (a.has_epsilon())
    throw StructuralError("complete: epsilon transitions present");
  if (a.is_complete()) return a;

  const std::size_t n = a.num_states();
  const auto sink = static_cast<State>(n);
  auto transitions = a.transitions();
  for (State q = 0; q < n; ++q)
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      if (a.successors(q, s).empty()) transitions.push_back({q, s, sink});
  for (Symbol s = 0; s < a.alphabet().size(); ++s)
    transitions.push_back({sink, s, sink});

  Acceptance acc = a.acceptance();
  switch (acc.kind) {
    case AcceptanceKind::Buchi:
      acc.accepting.resize(n + 1);
      break;
    case AcceptanceKind::CoBuchi:
      acc.accepting.insert(sink);
      break;
    case AcceptanceKind::Parity: {
      unsigned top = 0;
      for (unsigned p : acc.priorities) top = std::max(top, p);
      acc.priorities.push_back(top % 2 == 1 ? top : top + 1);
      break;
    }
    case AcceptanceKind::Streett:
      for (auto& pr : acc.pairs) {
        pr.request.resize(n + 1);
        pr.grant.resize(n + 1);
      }
      acc.pairs.push_back({IdSet(n + 1, {sink}), IdSet(n + 1)});
      break;
    case AcceptanceKind::Conj:
      acc.good.resize(n + 1);
      acc.bad.resize(n + 1);
      break;
  }

  auto names = a.state_names();
  names.push_back(fresh_name(a, "sink"));
  return Automaton(a.alphabet(), n + 1, a.initial(), std::move(transitions),
                   std::move(acc), std::move(names));
}

Automaton eliminate_epsilon(const Automaton& a) {
  if (!a.has_epsilon()) return a;

  const auto& acc = a.acceptance();
  // up to two tracked sets; bit 0 tracks the first, bit 1 the second
  std::vector<const IdSet*> tracked;
  switch (acc.kind) {
    case AcceptanceKind::Buchi:
    case AcceptanceKind::CoBuchi:
      tracked = {&acc.accepting};
      break;
    case AcceptanceKind::Conj:
      tracked = {&acc.good, &acc.bad};
      break;
    default:
      throw StructuralError(
          "eliminate_epsilon: only Buchi, co-Buchi and Conj are supported");
  }
  const unsigned width = 1u << tracked.size();
  auto marks = [&](State q) {
    unsigned m = 0;
    for (std::size_t i = 0; i < tracked.size(); ++i)
      if (tracked[i]->contains(q)) m |= 1u << i;
    return m;
  };

  const std::size_t n = a.num_states();
  using Node = std::uint64_t;  // q * width + flags
  auto pack = [&](State q, unsigned f) { return Node(q) * width + f; };

  // epsilon closure of a set of (state, flags) nodes; entering q adds marks(q)
  std::vector<std::uint32_t> stamp(n * width, 0);
  std::uint32_t epoch = 0;
  auto closure = [&](std::vector<Node> frontier) {
    ++epoch;
    std::vector<Node> out;
    for (Node x : frontier) {
      if (stamp[x] == epoch) continue;
      stamp[x] = epoch;
      out.push_back(x);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto q = static_cast<State>(out[i] / width);
      const auto f = static_cast<unsigned>(out[i] % width);
      for (State r : a.epsilon_successors(q)) {
        const Node y = pack(r, f | marks(r));
        if (stamp[y] == epoch) continue;
        stamp[y] = epoch;
        out.push_back(y);
      }
    }
    return out;
  };

  std::vector<State> id(n * width, kEpsilon);
  std::vector<Node> order;
  auto intern = [&](Node x) {
    if (id[x] == kEpsilon) {
      id[x] = static_cast<State>(order.size());
      order.push_back(x);
    }
    return id[x];
  };

  std::vector<Node> seeds;
  for (State q : a.initial()) seeds.push_back(pack(q, marks(q)));
  std::vector<State> initial;
  for (Node x : closure(seeds)) initial.push_back(intern(x));

  std::vector<Transition> transitions;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto q = static_cast<State>(order[i] / width);
    // the source state itself is not counted for the step
    const auto start = closure({pack(q, 0)});
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      std::vector<Node> after;
      for (Node x : start) {
        const auto p = static_cast<State>(x / width);
        const auto f = static_cast<unsigned>(x % width);
        for (State r : a.successors(p, s)) after.push_back(pack(r, f | marks(r)));
      }
      for (Node y : closure(after))
        transitions.push_back({static_cast<State>(i), s, intern(y)});
    }
  }

  const std::size_t m = order.size();
  std::vector<std::string> names;
  names.reserve(m);
  std::vector<IdSet> sets(tracked.size(), IdSet(m));
  for (std::size_t i = 0; i < m; ++i) {
    const auto q = static_cast<State>(order[i] / width);
    const auto f = static_cast<unsigned>(order[i] % width);
    std::string nm = a.state_name(q);
    if (f != marks(q)) {
      nm += "'";
      for (std::size_t b = 0; b < tracked.size(); ++b) nm += (f >> b & 1) ? '1' : '0';
    }
    names.push_back(std::move(nm));
    for (std::size_t b = 0; b < tracked.size(); ++b)
      if (f >> b & 1) sets[b].insert(static_cast<State>(i));
  }
  // flagged and unflagged copies of a state always get distinct names
  // above, but a user name could still collide with a suffixed one
  {
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      for (std::size_t i = 0; i < m; ++i) names[i] += "#" + std::to_string(i);
  }

  Acceptance out = acc;
  if (acc.kind == AcceptanceKind::Conj) {
    out.good = sets[0];
    out.bad = sets[1];
  } else {
    out.accepting = sets[0];
  }
  return Automaton(a.alphabet(), m, std::move(initial), std::move(transitions),
                   std::move(out), std::move(names));
}

IdSet subset_image(const Automaton& b, const IdSet& s, Symbol sigma) {
  IdSet out(b.num_states());
  for (State q : s.members())
    if (q < b.num_states())
      for (State r : b.successors(q, sigma)) out.insert(r);
  return out;
}

}  // namespace fota
