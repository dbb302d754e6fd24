#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fota/id_set.hpp"

namespace fota {

using State = std::uint32_t;
using Symbol = std::uint32_t;

/// Label reserved for epsilon transitions.
inline constexpr Symbol kEpsilon = std::numeric_limits<Symbol>::max();

struct Transition {
  State from = 0;
  Symbol label = 0;
  State to = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Symbol table. Ids are dense; names are unique and nonempty.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Symbol s) const { return names_.at(s); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<Symbol> find(std::string_view name) const;
  /// Like find, but throws InputError for unknown names.
  Symbol at(std::string_view name) const;

  /// True when every name is a single character.
  bool single_char_names() const noexcept;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
};

enum class AcceptanceKind { Buchi, CoBuchi, Parity, Streett, Conj };
enum class Mode { Classical, Finitary };

const char* to_string(AcceptanceKind kind);

struct StreettPair {
  IdSet request;
  IdSet grant;

  friend bool operator==(const StreettPair&, const StreettPair&) = default;
};

/// Acceptance condition. Only the fields belonging to `kind` are meaningful:
/// `accepting` for Buchi and CoBuchi, `priorities` for Parity, `pairs` for
/// Streett, and `good`/`bad` (F_b, F_c) for Conj.
struct Acceptance {
  AcceptanceKind kind = AcceptanceKind::Buchi;
  Mode mode = Mode::Finitary;
  IdSet accepting;
  std::vector<unsigned> priorities;
  std::vector<StreettPair> pairs;
  IdSet good;
  IdSet bad;

  bool finitary() const noexcept { return mode == Mode::Finitary; }

  static Acceptance buchi(IdSet f, Mode mode = Mode::Finitary);
  static Acceptance co_buchi(IdSet f, Mode mode = Mode::Finitary);
  static Acceptance parity(std::vector<unsigned> p, Mode mode = Mode::Finitary);
  static Acceptance streett(std::vector<StreettPair> pairs,
                            Mode mode = Mode::Finitary);
  static Acceptance conj(IdSet good, IdSet bad, Mode mode = Mode::Finitary);

  /// Field-wise, including fields the kind ignores.
  friend bool operator==(const Acceptance&, const Acceptance&) = default;
};

/// Immutable finite automaton over a finite alphabet. Transitions are kept
/// sorted and deduplicated; successor lookups are O(1) spans.
class Automaton {
 public:
  Automaton() = default;

  /// Throws StructuralError when a transition, initial state or acceptance
  /// set refers to a state or symbol out of range, when a parity map is not
  /// total, or when state names are duplicated.
  Automaton(Alphabet alphabet, std::size_t num_states,
            std::vector<State> initial, std::vector<Transition> transitions,
            Acceptance acceptance, std::vector<std::string> state_names = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return num_states_; }
  const std::vector<State>& initial() const noexcept { return initial_; }
  bool is_initial(State q) const noexcept;
  const std::vector<Transition>& transitions() const noexcept {
    return transitions_;
  }
  const Acceptance& acceptance() const noexcept { return acceptance_; }

  std::span<const State> successors(State q, Symbol a) const;
  std::span<const State> epsilon_successors(State q) const;

  const std::string& state_name(State q) const { return names_.at(q); }
  const std::vector<std::string>& state_names() const noexcept {
    return names_;
  }
  std::optional<State> find_state(std::string_view name) const;

  bool is_deterministic() const noexcept { return deterministic_; }
  bool is_complete() const noexcept { return complete_; }
  bool has_epsilon() const noexcept { return epsilon_; }

  /// Same graph, different acceptance condition (validated).
  Automaton with_acceptance(Acceptance acceptance) const;

 private:
  std::size_t slot(State q, Symbol a) const;

  Alphabet alphabet_;
  std::size_t num_states_ = 0;
  std::vector<State> initial_;
  std::vector<Transition> transitions_;
  Acceptance acceptance_;
  std::vector<std::string> names_;
  // CSR adjacency indexed by q * (|alphabet| + 1) + symbol; the last column
  // holds epsilon successors.
  std::vector<std::uint32_t> offsets_;
  std::vector<State> targets_;
  bool deterministic_ = false;
  bool complete_ = true;
  bool epsilon_ = false;
};

}  // namespace fota
