// Determinization of stitched models. Hybrid determinization merges the
// target states of nondeterministic transitions until a per-state merge
// budget u is exhausted, then falls back to the powerset construction for
// whatever nondeterminism remains. The result accepts every log the input
// accepts.
#pragma once

#include <map>
#include <set>

#include "prins/gfsm.hpp"

namespace prins {

// Number of merge operations each state has undergone. Merging any number of
// states at once counts as one operation for the survivor.
struct MergeLedger {
    std::map<StateId, int> merge_count;

    int count(StateId s) const {
        auto it = merge_count.find(s);
        return it == merge_count.end() ? 0 : it->second;
    }
};

// Scans guarded transitions in ascending (src, event, guard, dst) order and
// returns the first set of same-(source, event, guard) target states, minus
// those already merged u times, that still has more than one member. Empty
// set when no such group exists.
std::set<StateId> get_target_states_with_limit(const Gfsm& m, const MergeLedger& ledger, int u);

// Classic subset construction over (event, guard) labels; unreachable subsets
// are omitted and a subset is final iff it contains a final state.
Gfsm powerset(const Gfsm& m);

// Merge loop driven by get_target_states_with_limit with a fresh ledger, then
// powerset on any remaining nondeterminism.
Gfsm hybrid_determinize(const Gfsm& m, int u);

}  // namespace prins
