// Seeded synthetic corpora: random deterministic component machines, random
// walks through them, and random interleavings into system logs. The emitted
// ground-truth machines accept every projected log by construction, which
// gives property tests an exact oracle.
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "prins/gfsm.hpp"
#include "prins/log.hpp"

namespace prins {

struct GenConfig {
    int components = 2;
    int states_per_component = 4;
    int logs = 10;
    int max_log_length = 20;
    std::uint64_t seed = 0;
};

struct SyntheticCorpus {
    LogSet logs;
    std::map<std::string, Gfsm> ground_truth;  // keyed by component name
};

SyntheticCorpus generate_corpus(const GenConfig& cfg);

}  // namespace prins
