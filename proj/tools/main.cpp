// prins: infer a system-level gFSM from component-attributed logs, evaluate
// inferred models, and generate synthetic corpora.
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "prins/determinize.hpp"
#include "prins/evaluation.hpp"
#include "prins/generator.hpp"
#include "prins/pipeline.hpp"
#include "prins/serialize.hpp"

namespace {

using namespace prins;

int default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return static_cast<int>(std::min({n == 0 ? 1u : n, 4u}));
}

std::string sibling_path(const std::string& output, const std::string& new_ext) {
    std::filesystem::path p(output);
    p.replace_extension(new_ext);
    return p.string();
}

std::vector<int> parse_factors(const std::string& text) {
    std::vector<int> factors;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty()) factors.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    return factors;
}

LogSet load_logs(const std::string& input) {
    LogSet logs = parse_logs_file(input);
    if (logs.empty()) throw std::runtime_error("no logs in " + input);
    return logs;
}

void write_model_artifacts(const Gfsm& model, const std::string& output, bool dot,
                           const std::map<std::string, double>& stage_seconds) {
    write_text_file(output, model_to_json_text(model));
    if (dot) write_text_file(sibling_path(output, ".dot"), model_to_dot(model));
    ordered_json timing = ordered_json::object();
    for (const auto& [stage, seconds] : stage_seconds) timing[stage] = seconds;
    write_text_file(output + ".timing.json", timing.dump(2) + "\n");
}

ordered_json rational_json(const std::optional<Rational>& r) {
    if (!r) return nullptr;
    ordered_json j;
    j["num"] = r->num;
    j["den"] = r->den;
    j["value"] = r->value();
    return j;
}

ordered_json report_to_json(const EvalReport& report, bool include_timings) {
    ordered_json j;
    j["tp"] = report.tp;
    j["fn"] = report.fn;
    j["tn"] = report.tn;
    j["fp"] = report.fp;
    j["recall"] = rational_json(report.recall);
    j["specificity"] = rational_json(report.specificity);
    j["balanced_accuracy"] = rational_json(report.ba);
    j["skipped_negatives"] = report.skipped_negatives;
    ordered_json folds = ordered_json::array();
    for (const auto& t : report.per_fold) {
        ordered_json f;
        f["fold"] = t.fold;
        f["tp"] = t.tp;
        f["fn"] = t.fn;
        f["tn"] = t.tn;
        f["fp"] = t.fp;
        f["skipped_negatives"] = t.skipped_negatives;
        folds.push_back(std::move(f));
    }
    j["per_fold"] = std::move(folds);
    if (include_timings) {
        ordered_json times = ordered_json::object();
        for (const auto& [stage, seconds] : report.wall_times) times[stage] = seconds;
        j["wall_times"] = std::move(times);
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model inference for component-based system logs"};
    app.require_subcommand(1);

    std::string input, output, component;
    std::string strategy = "prins";
    std::string scale_strategy = "both";
    std::string guards = "on";
    std::string factors_text = "1,2,4,8";
    int k = 2, u = 1, workers = default_workers(), folds = 10, repeat = 1;
    std::uint64_t seed = 0;
    double timeout = 0.0;
    bool dot = false, timings = false, parallel_folds = false;
    int gen_components = 2, gen_states = 4, gen_logs = 10, gen_max_len = 20;

    auto add_common = [&](CLI::App* cmd, bool needs_output) {
        cmd->add_option("--input", input, "input log csv")->required();
        auto* out = cmd->add_option("--output", output, "output path");
        if (needs_output) out->required();
        return cmd;
    };
    auto add_infer_opts = [&](CLI::App* cmd) {
        cmd->add_option("--k", k, "state-merging future horizon")->check(CLI::NonNegativeNumber);
        cmd->add_option("--workers", workers, "max parallel component inferences")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--guards", guards, "value-set guard synthesis: on|off")
            ->check(CLI::IsMember({"on", "off"}));
    };

    auto* infer = app.add_subcommand("infer", "infer a deterministic system model");
    add_common(infer, true);
    add_infer_opts(infer);
    infer->add_option("--strategy", strategy, "prins|direct")->check(CLI::IsMember({"prins", "direct"}));
    infer->add_option("--u", u, "per-state merge limit for determinization")
        ->check(CLI::NonNegativeNumber);
    infer->add_option("--seed", seed, "seed recorded for reproducibility");
    infer->add_flag("--dot", dot, "also write a graphviz rendering");

    auto* project_cmd = app.add_subcommand("project", "keep only one component's entries");
    add_common(project_cmd, true);
    project_cmd->add_option("--component", component, "component name")->required();

    auto* stitch_only = app.add_subcommand("stitch-only", "stop before determinization");
    add_common(stitch_only, true);
    add_infer_opts(stitch_only);
    stitch_only->add_flag("--dot", dot, "also write a graphviz rendering");

    auto* evaluate = app.add_subcommand("evaluate", "k-fold cross validation");
    add_common(evaluate, true);
    add_infer_opts(evaluate);
    evaluate->add_option("--strategy", strategy, "prins|direct")
        ->check(CLI::IsMember({"prins", "direct"}));
    evaluate->add_option("--u", u, "per-state merge limit for determinization")
        ->check(CLI::NonNegativeNumber);
    evaluate->add_option("--folds", folds, "number of folds")->check(CLI::Range(2, 1 << 20));
    evaluate->add_option("--seed", seed, "fold assignment and mutation seed");
    evaluate->add_flag("--timings", timings, "include wall times in the json report");
    evaluate->add_flag("--parallel-folds", parallel_folds,
                       "evaluate folds concurrently (bounded by --workers) instead of sequentially");

    auto* scale = app.add_subcommand("scale", "timing over duplicated inputs");
    add_common(scale, true);
    add_infer_opts(scale);
    scale->add_option("--strategy", scale_strategy, "prins|direct (default: both)")
        ->check(CLI::IsMember({"prins", "direct", "both"}));
    scale->add_option("--u", u, "per-state merge limit for determinization")
        ->check(CLI::NonNegativeNumber);
    scale->add_option("--factors", factors_text, "comma-separated duplication factors");
    scale->add_option("--timeout", timeout, "per-run budget in seconds, 0 = unlimited");
    scale->add_option("--repeat", repeat, "timing repetitions per cell")->check(CLI::PositiveNumber);

    auto* stats = app.add_subcommand("stats", "summarize a log set");
    stats->add_option("--input", input, "input log csv")->required();
    stats->add_option("--output", output, "write the summary here instead of stdout");

    auto* gen = app.add_subcommand("gen", "generate a synthetic corpus with ground truth");
    gen->add_option("--output", output, "corpus csv path")->required();
    gen->add_option("--components", gen_components, "number of components")->check(CLI::PositiveNumber);
    gen->add_option("--states", gen_states, "states per component machine")->check(CLI::PositiveNumber);
    gen->add_option("--logs", gen_logs, "number of logs")->check(CLI::PositiveNumber);
    gen->add_option("--max-len", gen_max_len, "max entries per log")->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        InferenceConfig cfg;
        cfg.k = k;
        cfg.max_workers = workers;
        cfg.guard_synthesis = guards == "on";

        if (infer->parsed()) {
            LogSet logs = load_logs(input);
            PipelineResult result = strategy == "prins" ? run_prins(logs, cfg, u)
                                                        : run_direct(logs, cfg);
            write_model_artifacts(result.model, output, dot, result.stage_seconds);
        } else if (project_cmd->parsed()) {
            LogSet logs = load_logs(input);
            write_text_file(output, to_csv(project(logs, component)));
        } else if (stitch_only->parsed()) {
            LogSet logs = load_logs(input);
            PipelineResult result = run_stitch_only(logs, cfg);
            write_model_artifacts(result.model, output, dot, result.stage_seconds);
        } else if (evaluate->parsed()) {
            LogSet logs = load_logs(input);
            EvalConfig ecfg;
            ecfg.folds = folds;
            ecfg.strategy = strategy_from_name(strategy);
            ecfg.infer = cfg;
            ecfg.u = u;
            ecfg.seed = seed;
            if (parallel_folds) {
                ecfg.fold_workers = workers;
                ecfg.infer.max_workers = 1;
            }
            EvalReport report = kfold_evaluate(logs, ecfg);
            write_text_file(output, report_to_json(report, timings).dump(2) + "\n");
            write_text_file(sibling_path(output, ".csv"), report_to_csv(report));
        } else if (scale->parsed()) {
            LogSet logs = load_logs(input);
            std::vector<Strategy> strategies;
            if (scale_strategy == "both") strategies = {Strategy::prins, Strategy::direct};
            else strategies = {strategy_from_name(scale_strategy)};
            auto rows =
                scalability_run(logs, parse_factors(factors_text), strategies, timeout, cfg, u, repeat);
            write_text_file(output, scale_to_csv(rows));
        } else if (stats->parsed()) {
            LogSet logs = load_logs(input);
            std::set<std::string> events;
            for (const auto& log : logs.logs())
                for (const auto& e : log.entries) events.insert(e.event);
            std::ostringstream out;
            out << "logs: " << logs.size() << "\n";
            out << "entries: " << logs.total_entries() << "\n";
            out << "components: " << logs.components().size() << "\n";
            out << "events: " << events.size() << "\n";
            if (logs.size() >= 2) {
                Rational score = lds(logs);
                out << "lds: " << score.num << "/" << score.den << "\n";
            }
            if (output.empty()) std::cout << out.str();
            else write_text_file(output, out.str());
        } else if (gen->parsed()) {
            GenConfig gcfg;
            gcfg.components = gen_components;
            gcfg.states_per_component = gen_states;
            gcfg.logs = gen_logs;
            gcfg.max_log_length = gen_max_len;
            gcfg.seed = seed;
            SyntheticCorpus corpus = generate_corpus(gcfg);
            write_text_file(output, to_csv(corpus.logs));
            ordered_json truth = ordered_json::object();
            for (const auto& [name, machine] : corpus.ground_truth)
                truth[name] = model_to_json(machine);
            write_text_file(output + ".truth.json", truth.dump(2) + "\n");
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
