#pragma once

#include <cstddef>
#include <vector>

#include "fota/automaton.hpp"
#include "fota/lasso.hpp"

// Brute-force reference implementations. Nothing here shares code with the
// product and cycle-search machinery of the fast paths.
namespace fota::oracle {

struct Limits {
  std::size_t max_states = 8;        // automaton states per lasso position
  std::size_t max_cycles = 200'000;  // simple cycles (and cycle unions)
  std::size_t max_lassos = 10'000;
};

/// Canonical lassos with |u| <= max_u and 1 <= |v| <= max_v, without
/// duplicates, ordered by total length, then spoke length, then symbols.
std::vector<LassoWord> enumerate_lassos(std::size_t alphabet_size,
                                        std::size_t max_u, std::size_t max_v,
                                        const Limits& limits = {});

/// Exhaustive run search. Epsilon transitions are allowed; a run must read
/// a letter on its cycle. Throws BudgetExceeded when the instance is beyond
/// the limits.
bool member_oracle(const Automaton& a, const LassoWord& w,
                   const Limits& limits = {});

struct EquivReport {
  std::size_t checked = 0;
  std::vector<LassoWord> disagreements;
  bool equivalent() const { return disagreements.empty(); }
};

EquivReport check_equiv(const Automaton& a, const Automaton& b,
                        std::size_t max_u, std::size_t max_v,
                        const Limits& limits = {});

}  // namespace fota::oracle
