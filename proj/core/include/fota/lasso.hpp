#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fota/automaton.hpp"

namespace fota {

/// Ultimately periodic word spoke . cycle^omega; the cycle is nonempty.
struct LassoWord {
  std::vector<Symbol> spoke;
  std::vector<Symbol> cycle;

  std::size_t period_start() const noexcept { return spoke.size(); }
  Symbol at(std::size_t k) const;

  friend bool operator==(const LassoWord&, const LassoWord&) = default;
  friend auto operator<=>(const LassoWord&, const LassoWord&) = default;
};

/// Ultimately periodic run alpha . beta^omega. alpha[t] is the state before
/// reading letter t, so the period begins at word position alpha.size().
struct LassoRun {
  std::vector<State> alpha;
  std::vector<State> beta;

  State at(std::size_t k) const;

  friend bool operator==(const LassoRun&, const LassoRun&) = default;
};

/// Nonnegative integer or infinity; addition saturates.
class ExtendedNat {
 public:
  constexpr ExtendedNat() = default;
  constexpr ExtendedNat(std::uint64_t v) : value_(v) {}  // NOLINT
  static constexpr ExtendedNat infinity() {
    ExtendedNat e;
    e.value_.reset();
    return e;
  }

  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
  constexpr bool is_finite() const noexcept { return value_.has_value(); }
  constexpr std::uint64_t value() const { return value_.value(); }

  friend constexpr bool operator==(const ExtendedNat& a, const ExtendedNat& b) {
    return a.value_ == b.value_;
  }
  friend constexpr std::strong_ordering operator<=>(const ExtendedNat& a,
                                                    const ExtendedNat& b) {
    if (a.is_infinite() || b.is_infinite())
      return a.is_infinite() <=> b.is_infinite();
    return *a.value_ <=> *b.value_;
  }
  friend constexpr ExtendedNat operator+(const ExtendedNat& a,
                                         const ExtendedNat& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtendedNat(*a.value_ + *b.value_);
  }

  std::string str() const {
    return is_infinite() ? "inf" : std::to_string(*value_);
  }

 private:
  std::optional<std::uint64_t> value_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const ExtendedNat& e) {
  return os << e.str();
}

/// Read-only view of an ultimately periodic id sequence, shared by words
/// (ids are symbols) and runs (ids are states).
struct PeriodicSequence {
  std::span<const std::uint32_t> spoke;
  std::span<const std::uint32_t> cycle;

  PeriodicSequence(std::span<const std::uint32_t> s,
                   std::span<const std::uint32_t> c)
      : spoke(s), cycle(c) {}
  PeriodicSequence(const LassoWord& w) : spoke(w.spoke), cycle(w.cycle) {}  // NOLINT
  PeriodicSequence(const LassoRun& r) : spoke(r.alpha), cycle(r.beta) {}  // NOLINT

  std::uint32_t at(std::size_t k) const {
    return k < spoke.size() ? spoke[k]
                            : cycle[(k - spoke.size()) % cycle.size()];
  }
};

/// Parses "u(v)". Symbol names are matched greedily (longest name first);
/// whitespace between names is ignored. Throws ParseError.
LassoWord parse_lasso(std::string_view text, const Alphabet& alphabet);

/// Prints "u(v)". Names are separated by spaces unless all are one character.
std::string format_lasso(const LassoWord& w, const Alphabet& alphabet);

/// Primitive cycle with the spoke's matching tail absorbed into it. Two
/// lassos denote the same infinite word iff their canonical forms are equal.
LassoWord canonicalize(const LassoWord& w);

}  // namespace fota
