#pragma once

#include <optional>
#include <vector>

#include "fota/automaton.hpp"
#include "fota/id_set.hpp"
#include "fota/lasso.hpp"

namespace fota {

/// Steps from position k to the next position whose letter is in F
/// (k itself included); infinity if there is none.
ExtendedNat next_distance(const PeriodicSequence& w, const IdSet& f,
                          std::size_t k);

/// Max over pairs of: 0 if w_k is not a request, else the steps to the next
/// grant. Zero when there are no pairs.
ExtendedNat streett_distance(const PeriodicSequence& w,
                             const std::vector<StreettPair>& pairs,
                             std::size_t k);

/// Steps from k to the next position with an even priority <= p(w_k).
ExtendedNat parity_distance(const PeriodicSequence& w,
                            const std::vector<unsigned>& priorities,
                            std::size_t k);

/// limsup of the distance sequence of `acc` (Buchi, parity or Streett; the
/// sets and priorities are read over the ids of `w`). Spoke positions never
/// matter; an infinite distance at a cycle position gives infinity.
ExtendedNat limsup_distance(const PeriodicSequence& w, const Acceptance& acc);

/// Acceptance of a lasso run read as a word over states.
bool accepts_run(const LassoRun& rho, const Acceptance& acc);

/// True iff rho is a run of `a` (from an initial state) on w.
bool is_run_on(const Automaton& a, const LassoWord& w, const LassoRun& rho);

struct Membership {
  bool accepted = false;
  std::optional<LassoRun> run;  // set when accepted
};

/// Lasso membership via a good-cycle search in the product of `a` with the
/// lasso graph of `w`. Requires an epsilon-free automaton; throws InputError
/// for symbols outside the alphabet.
Membership member(const Automaton& a, const LassoWord& w);

}  // namespace fota
