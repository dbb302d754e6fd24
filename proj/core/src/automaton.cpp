#include "fota/automaton.hpp"

#include <algorithm>
#include <unordered_set>

#include "fota/error.hpp"

namespace fota {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw StructuralError("empty symbol name");
    if (!index_.emplace(names_[i], static_cast<Symbol>(i)).second)
      throw StructuralError("duplicate symbol name '" + names_[i] + "'");
  }
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::at(std::string_view name) const {
  auto s = find(name);
  if (!s) throw InputError("unknown symbol '" + std::string(name) + "'");
  return *s;
}

bool Alphabet::single_char_names() const noexcept {
  return std::all_of(names_.begin(), names_.end(),
                     [](const std::string& n) { return n.size() == 1; });
}

const char* to_string(AcceptanceKind kind) {
  switch (kind) {
    case AcceptanceKind::Buchi: return "buchi";
    case AcceptanceKind::CoBuchi: return "cobuchi";
    case AcceptanceKind::Parity: return "parity";
    case AcceptanceKind::Streett: return "streett";
    case AcceptanceKind::Conj: return "conj";
  }
  return "?";
}

Acceptance Acceptance::buchi(IdSet f, Mode mode) {
  Acceptance a;
  a.kind = AcceptanceKind::Buchi;
  a.mode = mode;
  a.accepting = std::move(f);
  return a;
}

Acceptance Acceptance::co_buchi(IdSet f, Mode mode) {
  Acceptance a = buchi(std::move(f), mode);
  a.kind = AcceptanceKind::CoBuchi;
  return a;
}

Acceptance Acceptance::parity(std::vector<unsigned> p, Mode mode) {
  Acceptance a;
  a.kind = AcceptanceKind::Parity;
  a.mode = mode;
  a.priorities = std::move(p);
  return a;
}

Acceptance Acceptance::streett(std::vector<StreettPair> pairs, Mode mode) {
  Acceptance a;
  a.kind = AcceptanceKind::Streett;
  a.mode = mode;
  a.pairs = std::move(pairs);
  return a;
}

Acceptance Acceptance::conj(IdSet good, IdSet bad, Mode mode) {
  Acceptance a;
  a.kind = AcceptanceKind::Conj;
  a.mode = mode;
  a.good = std::move(good);
  a.bad = std::move(bad);
  return a;
}

namespace {

void fit_set(IdSet& s, std::size_t n, const char* what) {
  for (auto q : s.members())
    if (q >= n)
      throw StructuralError(std::string(what) + " refers to state " +
                            std::to_string(q) + " out of range");
  s.resize(n);
}

void fit_acceptance(Acceptance& acc, std::size_t n) {
  switch (acc.kind) {
    case AcceptanceKind::Buchi:
    case AcceptanceKind::CoBuchi:
      fit_set(acc.accepting, n, "accepting set");
      break;
    case AcceptanceKind::Parity:
      if (acc.priorities.size() != n)
        throw StructuralError("priority map must assign every state");
      break;
    case AcceptanceKind::Streett:
      for (auto& pr : acc.pairs) {
        fit_set(pr.request, n, "request set");
        fit_set(pr.grant, n, "grant set");
      }
      break;
    case AcceptanceKind::Conj:
      fit_set(acc.good, n, "F_b");
      fit_set(acc.bad, n, "F_c");
      break;
  }
}

}  // namespace

Automaton::Automaton(Alphabet alphabet, std::size_t num_states,
                     std::vector<State> initial,
                     std::vector<Transition> transitions, Acceptance acceptance,
                     std::vector<std::string> state_names)
    : alphabet_(std::move(alphabet)),
      num_states_(num_states),
      initial_(std::move(initial)),
      transitions_(std::move(transitions)),
      acceptance_(std::move(acceptance)),
      names_(std::move(state_names)) {
  const std::size_t n = num_states_;
  const std::size_t sigma = alphabet_.size();
  if (n >= std::numeric_limits<State>::max())
    throw StructuralError("too many states");

  for (State q : initial_)
    if (q >= n) throw StructuralError("initial state out of range");
  std::sort(initial_.begin(), initial_.end());
  initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());

  for (const auto& t : transitions_) {
    if (t.from >= n || t.to >= n)
      throw StructuralError("transition endpoint out of range");
    if (t.label != kEpsilon && t.label >= sigma)
      throw StructuralError("transition label out of range");
  }
  std::sort(transitions_.begin(), transitions_.end(),
            [](const Transition& a, const Transition& b) {
              if (a.from != b.from) return a.from < b.from;
              // epsilon sorts last, matching the adjacency column layout
              if (a.label != b.label) return a.label < b.label;
              return a.to < b.to;
            });
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()),
                     transitions_.end());

  fit_acceptance(acceptance_, n);

  if (names_.empty()) {
    names_.reserve(n);
    for (std::size_t q = 0; q < n; ++q) names_.push_back(std::to_string(q));
  } else if (names_.size() != n) {
    throw StructuralError("state name table has wrong size");
  }
  {
    std::unordered_set<std::string> seen;
    for (const auto& nm : names_)
      if (!seen.insert(nm).second)
        throw StructuralError("duplicate state name '" + nm + "'");
  }

  const std::size_t cols = sigma + 1;
  offsets_.assign(n * cols + 1, 0);
  for (const auto& t : transitions_) {
    const std::size_t c = t.label == kEpsilon ? sigma : t.label;
    ++offsets_[t.from * cols + c + 1];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  targets_.reserve(transitions_.size());
  for (const auto& t : transitions_) targets_.push_back(t.to);

  epsilon_ = false;
  complete_ = true;
  bool at_most_one = true;
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto cnt = offsets_[q * cols + c + 1] - offsets_[q * cols + c];
      if (c == sigma) {
        if (cnt > 0) epsilon_ = true;
      } else {
        if (cnt == 0) complete_ = false;
        if (cnt > 1) at_most_one = false;
      }
    }
  }
  deterministic_ = initial_.size() == 1 && at_most_one && !epsilon_;
}

bool Automaton::is_initial(State q) const noexcept {
  return std::binary_search(initial_.begin(), initial_.end(), q);
}

std::size_t Automaton::slot(State q, Symbol a) const {
  if (q >= num_states_) throw InputError("state out of range");
  const std::size_t sigma = alphabet_.size();
  const std::size_t c = a == kEpsilon ? sigma : a;
  if (c > sigma) throw InputError("symbol out of range");
  return q * (sigma + 1) + c;
}

std::span<const State> Automaton::successors(State q, Symbol a) const {
  const std::size_t s = slot(q, a);
  return {targets_.data() + offsets_[s], offsets_[s + 1] - offsets_[s]};
}

std::span<const State> Automaton::epsilon_successors(State q) const {
  return successors(q, kEpsilon);
}

std::optional<State> Automaton::find_state(std::string_view name) const {
  for (std::size_t q = 0; q < names_.size(); ++q)
    if (names_[q] == name) return static_cast<State>(q);
  return std::nullopt;
}

Automaton Automaton::with_acceptance(Acceptance acceptance) const {
  return Automaton(alphabet_, num_states_, initial_, transitions_,
                   std::move(acceptance), names_);
}

}  // namespace fota
