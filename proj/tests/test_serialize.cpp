#include <doctest.h>

#include "fixtures.hpp"
#include "prins/serialize.hpp"

using namespace prins;

TEST_SUITE_BEGIN("serialize");

TEST_CASE("model json round trip preserves structure up to isomorphism") {
    for (const Gfsm& m : {fixtures::master_model(), fixtures::job_model(),
                          fixtures::expected_system_model()}) {
        Gfsm back = model_from_json_text(model_to_json_text(m));
        CHECK(isomorphic(m, back));
    }
}

TEST_CASE("model json schema") {
    ordered_json j = model_to_json(fixtures::master_model());
    CHECK(j.contains("states"));
    CHECK(j.contains("alphabet"));
    CHECK(j.contains("initial"));
    CHECK(j.contains("finals"));
    CHECK(j.contains("transitions"));
    bool saw_value_set = false;
    for (const auto& t : j["transitions"]) {
        CHECK(t.contains("src"));
        CHECK(t.contains("event"));
        CHECK(t.contains("dst"));
        const auto& guard = t["guard"];
        if (guard["kind"] == "value_set") {
            saw_value_set = true;
            CHECK(guard["params"].is_object());
        } else {
            CHECK(guard["kind"] == "always_true");
        }
    }
    CHECK(saw_value_set);
}

TEST_CASE("serialization output is stable") {
    Gfsm m = fixtures::expected_system_model();
    CHECK(model_to_json_text(m) == model_to_json_text(m));
    CHECK(model_to_dot(m) == model_to_dot(m));
}

TEST_CASE("dot export marks finals and orders nodes") {
    Gfsm m = fixtures::master_model();
    std::string dot = model_to_dot(m);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("p0 in {ok}") != std::string::npos);
    CHECK(dot.find("s0") < dot.find("s4"));
}

TEST_CASE("log set json round trip") {
    LogSet logs = fixtures::master_job_logs();
    LogSet back = logset_from_json(logset_to_json(logs));
    REQUIRE(back.size() == logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) {
        const Log& a = logs.logs()[i];
        const Log& b = back.logs()[i];
        CHECK(a.log_id == b.log_id);
        REQUIRE(a.entries.size() == b.entries.size());
        for (std::size_t j = 0; j < a.entries.size(); ++j) {
            CHECK(same_entry(a.entries[j], b.entries[j]));
            CHECK(a.entries[j].timestamp == b.entries[j].timestamp);
        }
    }
}

TEST_SUITE_END();
