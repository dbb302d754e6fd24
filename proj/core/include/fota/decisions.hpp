#pragma once

#include <optional>

#include "fota/automaton.hpp"
#include "fota/constructions.hpp"
#include "fota/lasso.hpp"

namespace fota {

using DecisionOptions = BuildOptions;

/// Outcome of a decision procedure. `witness` is set when `holds` is false
/// for universality, inclusion and equivalence, and when the language is
/// nonempty for the emptiness checks (there `holds` means "empty").
struct Verdict {
  bool holds = false;
  std::optional<LassoWord> witness;
};

/// Good-cycle emptiness check for Conj automata, linear in states plus
/// transitions. The answer does not depend on the acceptance mode. The
/// witness has a shortest spoke and passes through the smallest F_b state
/// lying on a good cycle.
Verdict emptiness_conj(const Automaton& a);

/// Emptiness for Buchi, co-Buchi and Conj (either mode) and for finitary
/// parity and Streett. Throws PreconditionError for classical parity or
/// Streett.
Verdict is_empty(const Automaton& a, const DecisionOptions& options = {});

/// Inclusion of the languages over ultimately periodic words. A subset
/// product handles deterministic b directly; otherwise a transition-profile
/// search of b completes the check.
Verdict inclusion(const Automaton& a, const Automaton& b,
                  const DecisionOptions& options = {});

/// inclusion(U, a) for the one-state universal automaton U.
Verdict universality(const Automaton& a, const DecisionOptions& options = {});

/// Both inclusions; the witness lies in the symmetric difference.
Verdict equivalence(const Automaton& a, const Automaton& b,
                    const DecisionOptions& options = {});

/// One state, a self-loop on every symbol, accepting, finitary Buchi.
Automaton universal_automaton(const Alphabet& alphabet);

}  // namespace fota
