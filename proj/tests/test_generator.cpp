#include <doctest.h>

#include "fixtures.hpp"
#include "prins/generator.hpp"

using namespace prins;

TEST_SUITE_BEGIN("generator");

TEST_CASE("same seed reproduces the corpus byte for byte") {
    GenConfig cfg;
    cfg.components = 2;
    cfg.states_per_component = 4;
    cfg.logs = 5;
    cfg.max_log_length = 16;
    cfg.seed = 77;
    SyntheticCorpus a = generate_corpus(cfg);
    SyntheticCorpus b = generate_corpus(cfg);
    CHECK(to_csv(a.logs) == to_csv(b.logs));
    REQUIRE(a.ground_truth.size() == b.ground_truth.size());
    for (const auto& [name, machine] : a.ground_truth)
        CHECK(model_to_json_text(machine) == model_to_json_text(b.ground_truth.at(name)));
}

TEST_CASE("projected logs are accepted by their ground-truth machines") {
    GenConfig cfg;
    cfg.components = 3;
    cfg.states_per_component = 5;
    cfg.logs = 12;
    cfg.max_log_length = 24;
    cfg.seed = 123;
    SyntheticCorpus corpus = generate_corpus(cfg);
    REQUIRE(corpus.logs.size() == 12);
    for (const auto& [name, machine] : corpus.ground_truth) {
        CHECK(machine.is_deterministic());
        if (!corpus.logs.components().count(name)) continue;
        LogSet projected = project(corpus.logs, name);
        for (const auto& log : projected.logs()) CHECK(machine.accepts(log));
    }
}

TEST_CASE("single-component corpora partition into one part per log") {
    GenConfig cfg;
    cfg.components = 1;
    cfg.states_per_component = 4;
    cfg.logs = 6;
    cfg.max_log_length = 10;
    cfg.seed = 9;
    SyntheticCorpus corpus = generate_corpus(cfg);
    for (const auto& log : corpus.logs.logs()) {
        CHECK(log.entries.size() >= 2);
        CHECK(partition(log).size() == 1);
    }
}

TEST_CASE("generator rejects infeasible parameters") {
    GenConfig cfg;
    cfg.components = 0;
    CHECK_THROWS_AS(generate_corpus(cfg), std::runtime_error);
}

TEST_SUITE_END();
