// End-to-end runs: projection -> inference -> stitching -> determinization,
// the same pipeline without the determinization stage, and the baseline that
// infers one model from the unprojected system logs. Stage wall times are
// captured for the scalability harness.
#pragma once

#include <map>
#include <string>

#include "prins/gfsm.hpp"
#include "prins/inference.hpp"
#include "prins/log.hpp"

namespace prins {

struct PipelineResult {
    Gfsm model;
    std::map<std::string, double> stage_seconds;
};

PipelineResult run_prins(const LogSet& logs, const InferenceConfig& cfg, int u);
PipelineResult run_stitch_only(const LogSet& logs, const InferenceConfig& cfg);
PipelineResult run_direct(const LogSet& logs, const InferenceConfig& cfg);

}  // namespace prins
