#pragma once

#include "fota/automaton.hpp"
#include "fota/id_set.hpp"

namespace fota {

/// Adds a rejecting sink if some (state, symbol) pair has no successor.
/// Complete inputs are returned unchanged. Throws StructuralError on
/// epsilon transitions.
Automaton complete(const Automaton& a);

/// Removes epsilon transitions. Each new state pairs an old state with flags
/// recording whether the last letter's epsilon*-letter-epsilon* move entered
/// an accepting state (F for Buchi/co-Buchi, F_b and F_c for Conj). Only
/// reachable states are built. Inputs without epsilon are returned unchanged.
Automaton eliminate_epsilon(const Automaton& a);

/// Subset-construction successor of `s` on `sigma`.
IdSet subset_image(const Automaton& b, const IdSet& s, Symbol sigma);

}  // namespace fota
