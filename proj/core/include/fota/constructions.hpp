#pragma once

#include <atomic>
#include <cstddef>
#include <vector>

#include "fota/automaton.hpp"

namespace fota {

/// Resource limits and cancellation for potentially exponential procedures.
struct BuildOptions {
  std::size_t max_states = 2'000'000;
  const std::atomic<bool>* cancel = nullptr;
};

/// Retags a deterministic complete classical automaton as finitary.
Automaton finitary_restriction(const Automaton& a);

/// Product of two Buchi automata, switching copies on leaving an accepting
/// state of the watched component. Only reachable states are built.
Automaton intersect(const Automaton& a1, const Automaton& a2);

/// Disjoint union. Both operands need the same acceptance kind and mode.
Automaton unite(const Automaton& a1, const Automaton& a2);

/// Priority 0 on F, 1 elsewhere; the universe of F is the state count.
std::vector<unsigned> encode_buchi_as_parity(const IdSet& f);

/// Pairs R_i = {p <= 2i+1}, G_i = {p even, p <= 2i} for i = 0..max/2.
/// Streett distances of the pairs equal parity distances pointwise.
std::vector<StreettPair> encode_parity_as_streett(
    const std::vector<unsigned>& priorities);

/// Three-phase reduction per pair. Several pairs share one copy of Q, with a
/// round-robin counter over the pairs. No pairs yields the same graph with
/// every state accepting.
Automaton streett_to_buchi(const Automaton& a);

/// Finitary Buchi automaton with the same language. Requires finitary mode.
Automaton to_nfb(const Automaton& a);

/// Product of `a` with the subset construction of `b`, as a finitary Conj
/// automaton with F_b = {s in F_A} and F_c = {S meets F_B}. Its good cycles
/// are counterexamples to L(a) being included in L(b); when `b` is
/// deterministic, the converse holds too.
Automaton inclusion_product(const Automaton& a, const Automaton& b,
                            const BuildOptions& options = {});

}  // namespace fota
