// Python bindings for the core operations: log handling, the inference
// pipeline, determinization, and the evaluation harness.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prins/determinize.hpp"
#include "prins/evaluation.hpp"
#include "prins/generator.hpp"
#include "prins/pipeline.hpp"
#include "prins/serialize.hpp"
#include "prins/stitching.hpp"

namespace py = pybind11;
using namespace prins;

namespace {

InferenceConfig make_config(int k, int workers, bool guards) {
    InferenceConfig cfg;
    cfg.k = k;
    cfg.max_workers = workers;
    cfg.guard_synthesis = guards;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_prins, m) {
    m.doc() = "Model inference for component-based system logs";

    py::class_<LogEntry>(m, "LogEntry")
        .def(py::init([](std::string component, std::string event, std::vector<std::string> params,
                         std::string timestamp) {
                 return LogEntry{std::move(timestamp), std::move(component), std::move(event),
                                 std::move(params)};
             }),
             py::arg("component"), py::arg("event"), py::arg("params") = std::vector<std::string>{},
             py::arg("timestamp") = "")
        .def_readonly("timestamp", &LogEntry::timestamp)
        .def_readonly("component", &LogEntry::component)
        .def_readonly("event", &LogEntry::event)
        .def_readonly("params", &LogEntry::params)
        .def("__repr__", [](const LogEntry& e) {
            return "LogEntry(" + e.component + ", " + e.event + ")";
        });

    py::class_<Log>(m, "Log")
        .def(py::init([](std::string log_id, std::vector<LogEntry> entries) {
                 return Log{std::move(log_id), std::move(entries)};
             }),
             py::arg("log_id"), py::arg("entries") = std::vector<LogEntry>{})
        .def_readonly("log_id", &Log::log_id)
        .def_readonly("entries", &Log::entries)
        .def("__len__", [](const Log& l) { return l.entries.size(); });

    py::class_<LogSet>(m, "LogSet")
        .def(py::init<>())
        .def("add", &LogSet::add)
        .def("logs", &LogSet::logs)
        .def("components", &LogSet::components)
        .def("__len__", &LogSet::size)
        .def("total_entries", &LogSet::total_entries)
        .def("to_csv", [](const LogSet& logs) { return to_csv(logs); })
        .def("to_json", [](const LogSet& logs) { return logset_to_json(logs).dump(2); });

    py::class_<Gfsm>(m, "Gfsm")
        .def(py::init<>())
        .def("states", &Gfsm::states)
        .def("alphabet", &Gfsm::alphabet)
        .def("initial", &Gfsm::initial)
        .def("finals", &Gfsm::finals)
        .def("accepts", [](const Gfsm& m, const Log& log) { return m.accepts(log); })
        .def("accepts_entries",
             [](const Gfsm& m, const std::vector<LogEntry>& entries) { return m.accepts(entries); })
        .def("is_deterministic", &Gfsm::is_deterministic)
        .def("num_states", [](const Gfsm& m) { return m.states().size(); })
        .def("num_transitions", [](const Gfsm& m) { return m.transitions().size(); })
        .def("to_json", [](const Gfsm& m) { return model_to_json_text(m); })
        .def("to_dot", [](const Gfsm& m) { return model_to_dot(m); });

    py::class_<Rational>(m, "Rational")
        .def_readonly("num", &Rational::num)
        .def_readonly("den", &Rational::den)
        .def("value", &Rational::value)
        .def("__repr__", [](const Rational& r) {
            return std::to_string(r.num) + "/" + std::to_string(r.den);
        });

    m.def("parse_logs", &parse_logs_text, py::arg("text"), "Parse logs from csv text");
    m.def("parse_logs_file", &parse_logs_file, py::arg("path"));
    m.def("model_from_json", &model_from_json_text, py::arg("text"));

    m.def("project", &project, py::arg("logs"), py::arg("component"));
    m.def(
        "partition",
        [](const Log& log) {
            std::vector<std::pair<std::string, Log>> parts;
            for (auto& p : partition(log)) parts.emplace_back(p.component, std::move(p.part));
            return parts;
        },
        py::arg("log"));
    m.def("duplicate", &duplicate, py::arg("logs"), py::arg("factor"));
    m.def(
        "mutate_negative",
        [](const LogSet& logs, std::uint64_t seed, int attempts) {
            return mutate_negative(logs, seed, attempts);
        },
        py::arg("logs"), py::arg("seed"), py::arg("per_log_attempts") = 100);

    m.def(
        "build_pta", [](const LogSet& logs) { return build_pta(logs); }, py::arg("logs"));
    m.def(
        "infer_component",
        [](const LogSet& logs, int k, bool guards) {
            return infer_component(logs, make_config(k, 1, guards));
        },
        py::arg("logs"), py::arg("k") = 2, py::arg("guards") = true);
    m.def(
        "infer_all",
        [](const LogSet& logs, int k, int workers, bool guards) {
            return infer_all(logs, make_config(k, workers, guards));
        },
        py::arg("logs"), py::arg("k") = 2, py::arg("workers") = 1, py::arg("guards") = true);
    m.def("stitch", &stitch, py::arg("system_logs"), py::arg("component_models"));
    m.def("powerset", &powerset, py::arg("model"));
    m.def("hybrid_determinize", &hybrid_determinize, py::arg("model"), py::arg("u") = 1);
    m.def("isomorphic", &isomorphic, py::arg("a"), py::arg("b"));

    m.def(
        "infer",
        [](const LogSet& logs, const std::string& strategy, int k, int u, int workers, bool guards) {
            InferenceConfig cfg = make_config(k, workers, guards);
            return strategy == "direct" ? run_direct(logs, cfg).model : run_prins(logs, cfg, u).model;
        },
        py::arg("logs"), py::arg("strategy") = "prins", py::arg("k") = 2, py::arg("u") = 1,
        py::arg("workers") = 1, py::arg("guards") = true,
        "Run the full pipeline and return the final model");
    m.def(
        "stitch_only",
        [](const LogSet& logs, int k, int workers, bool guards) {
            return run_stitch_only(logs, make_config(k, workers, guards)).model;
        },
        py::arg("logs"), py::arg("k") = 2, py::arg("workers") = 1, py::arg("guards") = true);

    m.def("lds", &lds, py::arg("logs"));
    m.def(
        "kfold_evaluate",
        [](const LogSet& logs, int folds, const std::string& strategy, std::uint64_t seed, int k,
           int u, int workers) {
            EvalConfig cfg;
            cfg.folds = folds;
            cfg.strategy = strategy_from_name(strategy);
            cfg.infer = make_config(k, workers, true);
            cfg.u = u;
            cfg.seed = seed;
            EvalReport r = kfold_evaluate(logs, cfg);
            py::dict out;
            out["tp"] = r.tp;
            out["fn"] = r.fn;
            out["tn"] = r.tn;
            out["fp"] = r.fp;
            out["recall"] = r.recall ? py::cast(r.recall->value()) : py::none();
            out["specificity"] = r.specificity ? py::cast(r.specificity->value()) : py::none();
            out["balanced_accuracy"] = r.ba ? py::cast(r.ba->value()) : py::none();
            out["skipped_negatives"] = r.skipped_negatives;
            return out;
        },
        py::arg("logs"), py::arg("folds") = 10, py::arg("strategy") = "prins", py::arg("seed") = 0,
        py::arg("k") = 2, py::arg("u") = 1, py::arg("workers") = 1);

    m.def(
        "generate_corpus",
        [](int components, int states, int logs, int max_len, std::uint64_t seed) {
            GenConfig cfg;
            cfg.components = components;
            cfg.states_per_component = states;
            cfg.logs = logs;
            cfg.max_log_length = max_len;
            cfg.seed = seed;
            SyntheticCorpus corpus = generate_corpus(cfg);
            return py::make_tuple(corpus.logs, corpus.ground_truth);
        },
        py::arg("components") = 2, py::arg("states") = 4, py::arg("logs") = 10,
        py::arg("max_len") = 20, py::arg("seed") = 0);
}
