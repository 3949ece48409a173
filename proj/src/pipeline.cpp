#include "prins/pipeline.hpp"

#include <chrono>

#include "prins/determinize.hpp"
#include "prins/stitching.hpp"

namespace prins {

namespace {

class StageClock {
public:
    explicit StageClock(std::map<std::string, double>& sink) : sink_(sink) { reset(); }

    void reset() { start_ = std::chrono::steady_clock::now(); }

    void lap(const std::string& stage) {
        auto now = std::chrono::steady_clock::now();
        sink_[stage] = std::chrono::duration<double>(now - start_).count();
        start_ = now;
    }

private:
    std::map<std::string, double>& sink_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

PipelineResult run_prins(const LogSet& logs, const InferenceConfig& cfg, int u) {
    PipelineResult result;
    StageClock clock(result.stage_seconds);
    auto projections = project_all(logs);
    clock.lap("projection");
    auto models = infer_from_projections(projections, cfg);
    clock.lap("inference");
    Gfsm stitched = stitch(logs, models);
    clock.lap("stitching");
    result.model = hybrid_determinize(stitched, u);
    clock.lap("determinization");
    return result;
}

PipelineResult run_stitch_only(const LogSet& logs, const InferenceConfig& cfg) {
    PipelineResult result;
    StageClock clock(result.stage_seconds);
    auto projections = project_all(logs);
    clock.lap("projection");
    auto models = infer_from_projections(projections, cfg);
    clock.lap("inference");
    result.model = stitch(logs, models);
    clock.lap("stitching");
    return result;
}

PipelineResult run_direct(const LogSet& logs, const InferenceConfig& cfg) {
    PipelineResult result;
    StageClock clock(result.stage_seconds);
    result.model = infer_direct(logs, cfg);
    clock.lap("inference");
    return result;
}

}  // namespace prins
