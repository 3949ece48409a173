// Passive model inference: prefix-tree acceptor construction followed by
// state merging with a bounded future horizon, yielding a deterministic gFSM
// per component. Components are independent, so a set of them can be inferred
// by a bounded worker pool.
#pragma once

#include <map>
#include <string>

#include "prins/gfsm.hpp"
#include "prins/log.hpp"

namespace prins {

struct InferenceConfig {
    // Future horizon for state merging. 0 collapses everything into a single
    // looping state; any value larger than the longest training log disables
    // merging and keeps the prefix tree.
    int k = 2;
    // Parallel component inferences in infer_all / infer_from_projections.
    int max_workers = 1;
    // When on, same-event branches whose observed parameter values are
    // disjoint are kept apart behind value-set guards instead of being merged.
    bool guard_synthesis = true;
};

// Tree-shaped machine accepting exactly the input entry sequences. Branches
// that share an event but differ in parameters carry value-set guards.
Gfsm build_pta(const LogSet& logs);

// PTA plus merging. Requires all entries to belong to one component.
Gfsm infer_component(const LogSet& logs, const InferenceConfig& cfg);

// Same engine on unprojected logs, the whole system treated as one stream.
Gfsm infer_direct(const LogSet& logs, const InferenceConfig& cfg);

// One model per component of system_logs, inferred from its projection,
// with at most cfg.max_workers inferences in flight. The result does not
// depend on max_workers.
std::map<std::string, Gfsm> infer_all(const LogSet& system_logs, const InferenceConfig& cfg);

// Split form used by the pipeline so projection and inference can be timed
// as separate stages.
std::map<std::string, LogSet> project_all(const LogSet& system_logs);
std::map<std::string, Gfsm> infer_from_projections(const std::map<std::string, LogSet>& projections,
                                                   const InferenceConfig& cfg);

}  // namespace prins
