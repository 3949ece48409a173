#include <doctest.h>

#include "fixtures.hpp"
#include "prins/generator.hpp"
#include "prins/inference.hpp"

using namespace prins;
using fixtures::entry;

TEST_SUITE_BEGIN("inference");

namespace {

LogSet single_component_logs(const std::vector<std::vector<std::string>>& sequences,
                             const std::string& component = "A") {
    LogSet logs;
    int i = 0;
    for (const auto& seq : sequences) {
        Log log{"log" + std::to_string(i++), {}};
        for (const auto& ev : seq) log.entries.push_back(entry(component, ev));
        logs.add(std::move(log));
    }
    return logs;
}

}  // namespace

TEST_CASE("prefix tree of two nested sequences") {
    LogSet logs = single_component_logs({{"a"}, {"a", "b"}});
    Gfsm pta = build_pta(logs);
    CHECK(pta.states().size() == 3);
    CHECK(pta.finals().size() == 2);
    CHECK(pta.is_deterministic());
    CHECK(pta.accepts({entry("A", "a")}));
    CHECK(pta.accepts({entry("A", "a"), entry("A", "b")}));
    CHECK_FALSE(pta.accepts({entry("A", "b")}));
}

TEST_CASE("prefix tree of one log is a chain") {
    LogSet logs = single_component_logs({{"a", "b", "c", "d"}});
    Gfsm pta = build_pta(logs);
    CHECK(pta.states().size() == 5);
    CHECK(pta.finals().size() == 1);
}

TEST_CASE("prefix tree accepts exactly the training sequences") {
    LogSet master = project(fixtures::master_job_logs(), "Master");
    Gfsm pta = build_pta(master);
    CHECK(pta.states().size() == 5);
    CHECK(pta.is_deterministic());

    // enumerate every word up to length 4 over the observed entries and
    // compare against literal membership in the training set
    std::vector<LogEntry> alphabet = fixtures::observed_alphabet(master);
    REQUIRE(alphabet.size() == 4);  // start, working, end(ok), end(err)
    auto accepted = fixtures::accepted_words(pta, alphabet, 4);
    REQUIRE(accepted.size() == 2);
    for (const auto& word : accepted) CHECK(word.size() == 3);
    for (const auto& log : master.logs()) CHECK(pta.accepts(log));
}

TEST_CASE("job component model has the loop shape") {
    LogSet job = project(fixtures::master_job_logs(), "Job");
    InferenceConfig cfg;
    cfg.k = 2;
    Gfsm model = infer_component(job, cfg);
    CHECK(isomorphic(model, fixtures::job_model()));
    CHECK(model.accepts(job.logs()[0]));
    CHECK(model.accepts(job.logs()[1]));
    // generalization: the loop admits more try/pass rounds
    CHECK(model.accepts({entry("Job", "init"), entry("Job", "try"), entry("Job", "pass")}));
}

TEST_CASE("master component model keeps the guarded endings apart") {
    LogSet master = project(fixtures::master_job_logs(), "Master");
    InferenceConfig cfg;
    cfg.k = 2;
    Gfsm model = infer_component(master, cfg);
    CHECK(isomorphic(model, fixtures::master_model()));
}

TEST_CASE("horizon beyond every log keeps exactly the training language") {
    LogSet job = project(fixtures::master_job_logs(), "Job");
    InferenceConfig cfg;
    cfg.k = 1000;
    Gfsm model = infer_component(job, cfg);
    std::vector<LogEntry> alphabet = fixtures::observed_alphabet(job);
    auto accepted = fixtures::accepted_words(model, alphabet, 6);
    CHECK(accepted.size() == 2);  // the two training sequences, nothing else
}

TEST_CASE("zero horizon collapses to a universal loop over the alphabet") {
    LogSet job = project(fixtures::master_job_logs(), "Job");
    InferenceConfig cfg;
    cfg.k = 0;
    Gfsm model = infer_component(job, cfg);
    CHECK(model.states().size() == 1);
    CHECK(model.is_final(model.initial()));
    // single-state oracle: every word over the observed per-state events runs
    std::vector<LogEntry> alphabet = fixtures::observed_alphabet(job);
    auto accepted = fixtures::accepted_words(model, alphabet, 3);
    std::size_t expected = 0;
    for (std::size_t len = 0, pow = 1; len <= 3; ++len, pow *= alphabet.size()) expected += pow;
    CHECK(accepted.size() == expected);
}

TEST_CASE("inferred models stay deterministic and accept their training logs") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        GenConfig gcfg;
        gcfg.components = 3;
        gcfg.states_per_component = 4;
        gcfg.logs = 8;
        gcfg.max_log_length = 18;
        gcfg.seed = seed;
        SyntheticCorpus corpus = generate_corpus(gcfg);
        InferenceConfig cfg;
        cfg.k = 2;
        for (const auto& component : corpus.logs.components()) {
            LogSet projected = project(corpus.logs, component);
            Gfsm model = infer_component(projected, cfg);
            CHECK(model.is_deterministic());
            for (const auto& log : projected.logs()) CHECK(model.accepts(log));
        }
    }
}

TEST_CASE("smaller horizons accept a superset of larger horizons") {
    std::vector<LogSet> corpora{
        single_component_logs({{"a", "a", "a"}}),
        single_component_logs({{"a", "b", "a", "b"}}),
        project(fixtures::master_job_logs(), "Job"),
    };
    for (const auto& logs : corpora) {
        std::vector<LogEntry> alphabet = fixtures::observed_alphabet(logs);
        std::vector<std::set<std::vector<std::size_t>>> accepted;
        for (int k : {0, 1, 2, 3}) {
            InferenceConfig cfg;
            cfg.k = k;
            accepted.push_back(fixtures::accepted_words(infer_component(logs, cfg), alphabet, 6));
        }
        for (std::size_t small = 0; small < accepted.size(); ++small)
            for (std::size_t large = small + 1; large < accepted.size(); ++large)
                for (const auto& word : accepted[large]) CHECK(accepted[small].count(word) == 1);
    }
}

TEST_CASE("guard synthesis off merges the guarded endings") {
    LogSet master = project(fixtures::master_job_logs(), "Master");
    InferenceConfig cfg;
    cfg.k = 2;
    cfg.guard_synthesis = false;
    Gfsm model = infer_component(master, cfg);
    CHECK(model.is_deterministic());
    for (const auto& t : model.transitions()) CHECK(t.guard.kind == Guard::Kind::always_true);
    // both endings land in one state, so the err ending with ok params runs too
    CHECK(model.accepts({entry("Master", "start"), entry("Master", "working"),
                         entry("Master", "end", {"whatever"})}));
}

TEST_CASE("overlapping parameter observations fall back to target merging") {
    // one params vector is a prefix of the other, so no index separates them
    LogSet logs;
    logs.add(Log{"a", {entry("A", "e", {"x"}), entry("A", "q")}});
    logs.add(Log{"b", {entry("A", "e", {"x", "y"}), entry("A", "r")}});
    InferenceConfig cfg;
    cfg.k = 2;
    Gfsm model = infer_component(logs, cfg);
    CHECK(model.is_deterministic());
    CHECK(model.accepts(logs.logs()[0]));
    CHECK(model.accepts(logs.logs()[1]));
    // merged successor admits the crossed continuations as well
    CHECK(model.accepts({entry("A", "e", {"x"}), entry("A", "r")}));
}

TEST_CASE("infer_all maps every component to its model") {
    LogSet logs = fixtures::master_job_logs();
    InferenceConfig cfg;
    cfg.k = 2;
    cfg.max_workers = 2;
    auto models = infer_all(logs, cfg);
    REQUIRE(models.size() == 2);
    CHECK(isomorphic(models.at("Master"), fixtures::master_model()));
    CHECK(isomorphic(models.at("Job"), fixtures::job_model()));
}

TEST_CASE("single-component infer_all equals infer_component") {
    LogSet logs = single_component_logs({{"a", "b"}, {"a", "c"}});
    InferenceConfig cfg;
    cfg.k = 2;
    auto models = infer_all(logs, cfg);
    REQUIRE(models.size() == 1);
    CHECK(isomorphic(models.at("A"), infer_component(logs, cfg)));
}

TEST_CASE("worker count does not change the inferred models") {
    GenConfig gcfg;
    gcfg.components = 4;
    gcfg.states_per_component = 5;
    gcfg.logs = 10;
    gcfg.max_log_length = 24;
    gcfg.seed = 99;
    SyntheticCorpus corpus = generate_corpus(gcfg);
    InferenceConfig one;
    one.k = 2;
    one.max_workers = 1;
    InferenceConfig four = one;
    four.max_workers = 4;
    auto a = infer_all(corpus.logs, one);
    auto b = infer_all(corpus.logs, four);
    REQUIRE(a.size() == b.size());
    for (const auto& [component, model] : a) CHECK(isomorphic(model, b.at(component)));
}

TEST_CASE("inference input validation") {
    CHECK_THROWS_AS(build_pta(LogSet{}), std::runtime_error);
    InferenceConfig cfg;
    CHECK_THROWS_AS(infer_component(LogSet{}, cfg), std::runtime_error);
    CHECK_THROWS_AS(infer_component(fixtures::master_job_logs(), cfg), std::runtime_error);
    cfg.k = -1;
    CHECK_THROWS_AS(infer_component(project(fixtures::master_job_logs(), "Job"), cfg),
                    std::runtime_error);
}

TEST_SUITE_END();
