// Combining component models into a system-level model along the component
// interleavings recorded in each log: slice the component model over each
// maximal single-component run, chain the slices by merging junction states,
// then collapse the per-log models' initial states into one.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prins/gfsm.hpp"
#include "prins/log.hpp"

namespace prins {

// Per-component resume points carried across successive slices of one log.
struct StitchContext {
    std::map<std::string, StateId> slice_start;

    static StitchContext init(const std::map<std::string, Gfsm>& models);
};

// A copy of the sub-machine traversed while reading one partition part.
// Exactly one final state: the last state visited.
struct SlicedModel {
    Gfsm machine;
    std::string origin;  // component name
};

// Runs model from ctx.slice_start[component] over the part and copies the
// traversed states and guarded transitions. Advances the context to the last
// visited state. A missing enabled transition raises a slice failure, which
// signals a backend contract violation.
SlicedModel slice(const Gfsm& model, StitchContext& ctx, const Log& part);

// Appends the slice to the accumulator by merging the accumulator's sole
// final state with the slice's initial state. Empty accumulator yields the
// slice itself.
Gfsm append(const std::optional<Gfsm>& accumulator, const SlicedModel& sliced);

// Disjoint union with all initial states collapsed into one.
Gfsm union_models(const std::vector<Gfsm>& models);

// Full stitching pass: one model per log built by partition + slice + append,
// then the union of all per-log models. The result may be nondeterministic.
Gfsm stitch(const LogSet& system_logs, const std::map<std::string, Gfsm>& component_models);

}  // namespace prins
