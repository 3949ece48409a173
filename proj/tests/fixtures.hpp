// Shared fixtures and independent oracles for the test suites.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "prins/gfsm.hpp"
#include "prins/log.hpp"
#include "prins/serialize.hpp"

namespace fixtures {

using namespace prins;

inline std::string data_path(const std::string& name) {
    return std::string(PRINS_TEST_DATA_DIR) + "/" + name;
}

inline LogEntry entry(std::string component, std::string event,
                      std::vector<std::string> params = {}) {
    return LogEntry{"", std::move(component), std::move(event), std::move(params)};
}

inline LogSet master_job_logs() { return parse_logs_file(data_path("master_job.csv")); }

inline Gfsm expected_system_model() {
    return model_from_json_text(read_text_file(data_path("master_job_expected_model.json")));
}

// The two component machines the running example is built from.
inline Gfsm master_model() {
    Gfsm m;
    m.set_initial(0);
    m.add_transition(0, "start", 1);
    m.add_transition(1, "working", 2);
    m.add_transition(2, "end", 3, Guard::values({{0, {"ok"}}}));
    m.add_transition(2, "end", 4, Guard::values({{0, {"err"}}}));
    m.add_final(3);
    m.add_final(4);
    return m;
}

inline Gfsm job_model() {
    Gfsm m;
    m.set_initial(0);
    m.add_transition(0, "init", 1);
    m.add_transition(1, "try", 2);
    m.add_transition(2, "pass", 1);
    m.add_transition(2, "wait", 3);
    m.add_transition(3, "wait", 3);
    m.add_transition(3, "fail", 4);
    m.add_final(1);
    m.add_final(4);
    return m;
}

// Exhaustive run enumeration, an acceptance oracle independent of the subset
// simulation in Gfsm::accepts. Only usable on small machines.
inline bool brute_force_accepts(const Gfsm& m, const std::vector<LogEntry>& entries) {
    std::function<bool(StateId, std::size_t)> walk = [&](StateId s, std::size_t i) {
        if (i == entries.size()) return m.is_final(s);
        for (const auto& t : m.out(s)) {
            if (t.event != entries[i].event || !t.guard.eval(entries[i].params)) continue;
            if (walk(t.dst, i + 1)) return true;
        }
        return false;
    };
    return walk(m.initial(), 0);
}

// Backtracking graph isomorphism for small machines, including
// nondeterministic ones, used where the deterministic traversal check does
// not apply.
inline bool nfa_isomorphic(const Gfsm& a, const Gfsm& b) {
    if (a.states().size() != b.states().size()) return false;
    if (a.finals().size() != b.finals().size()) return false;
    if (a.transitions().size() != b.transitions().size()) return false;
    std::vector<StateId> as(a.states().begin(), a.states().end());
    std::vector<StateId> bs(b.states().begin(), b.states().end());

    auto signature = [](const Gfsm& m, StateId s) {
        std::multiset<std::string> in, out;
        for (const auto& t : m.transitions()) {
            if (t.src == s) out.insert(t.event + "/" + t.guard.describe());
            if (t.dst == s) in.insert(t.event + "/" + t.guard.describe());
        }
        std::string sig = m.is_final(s) ? "F" : "-";
        sig += s == m.initial() ? "I" : "-";
        for (const auto& x : out) sig += "|" + x;
        sig += "##";
        for (const auto& x : in) sig += "|" + x;
        return sig;
    };
    std::map<StateId, std::string> sig_a, sig_b;
    for (StateId s : as) sig_a[s] = signature(a, s);
    for (StateId s : bs) sig_b[s] = signature(b, s);

    std::map<StateId, StateId> mapping;
    std::set<StateId> used;
    auto edges_consistent = [&]() {
        std::multiset<std::string> ea, eb;
        for (const auto& t : a.transitions()) {
            auto si = mapping.find(t.src);
            auto di = mapping.find(t.dst);
            if (si == mapping.end() || di == mapping.end()) continue;
            ea.insert(std::to_string(si->second) + ">" + t.event + "/" + t.guard.describe() + ">" +
                      std::to_string(di->second));
        }
        for (const auto& t : b.transitions()) {
            if (!used.count(t.src) || !used.count(t.dst)) continue;
            eb.insert(std::to_string(t.src) + ">" + t.event + "/" + t.guard.describe() + ">" +
                      std::to_string(t.dst));
        }
        return ea == eb;
    };
    std::function<bool(std::size_t)> assign = [&](std::size_t i) {
        if (i == as.size()) return true;
        StateId x = as[i];
        for (StateId y : bs) {
            if (used.count(y)) continue;
            if (sig_a[x] != sig_b[y]) continue;
            if ((x == a.initial()) != (y == b.initial())) continue;
            if (a.is_final(x) != b.is_final(y)) continue;
            mapping[x] = y;
            used.insert(y);
            if (edges_consistent() && assign(i + 1)) return true;
            mapping.erase(x);
            used.erase(y);
        }
        return false;
    };
    return assign(0);
}

// All words over the observed entry alphabet up to the given length that the
// machine accepts, via subset simulation along the enumeration tree.
inline std::set<std::vector<std::size_t>> accepted_words(const Gfsm& m,
                                                         const std::vector<LogEntry>& alphabet,
                                                         std::size_t max_len) {
    std::set<std::vector<std::size_t>> accepted;
    std::function<void(std::set<StateId>, std::vector<std::size_t>&)> walk =
        [&](std::set<StateId> frontier, std::vector<std::size_t>& word) {
            for (StateId s : frontier)
                if (m.is_final(s)) {
                    accepted.insert(word);
                    break;
                }
            if (word.size() == max_len) return;
            for (std::size_t i = 0; i < alphabet.size(); ++i) {
                std::set<StateId> next;
                for (StateId s : frontier)
                    for (StateId t : m.step(s, alphabet[i])) next.insert(t);
                if (next.empty()) continue;
                word.push_back(i);
                walk(std::move(next), word);
                word.pop_back();
            }
        };
    std::vector<std::size_t> word;
    walk({m.initial()}, word);
    return accepted;
}

// Distinct (event, params) pairs occurring in a log set, in a fixed order.
inline std::vector<LogEntry> observed_alphabet(const LogSet& logs) {
    std::map<std::pair<std::string, std::vector<std::string>>, LogEntry> seen;
    for (const auto& log : logs.logs())
        for (const auto& e : log.entries) seen.emplace(std::make_pair(e.event, e.params), e);
    std::vector<LogEntry> alphabet;
    for (auto& [key, e] : seen) alphabet.push_back(e);
    return alphabet;
}

}  // namespace fixtures
