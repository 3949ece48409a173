// Guarded finite state machines: transitions fire on an event when a guard
// over the event's parameter values holds. Machines may be nondeterministic;
// acceptance runs a breadth-wise subset simulation so it is correct either way.
#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "prins/log.hpp"

namespace prins {

using StateId = int;

// Either unconditionally true, or a conjunction of per-index value sets:
// g(v) holds iff v[i] is in allowed[i] for every constrained index i.
struct Guard {
    enum class Kind { always_true, value_set };

    Kind kind = Kind::always_true;
    std::map<int, std::set<std::string>> allowed;

    static Guard any() { return Guard{}; }
    static Guard values(std::map<int, std::set<std::string>> allowed);

    bool eval(const std::vector<std::string>& params) const;

    // Whether some parameter vector can satisfy both guards. always_true
    // overlaps everything; value sets overlap unless some index constrained by
    // both has an empty intersection.
    bool overlaps(const Guard& other) const;

    friend bool operator==(const Guard& a, const Guard& b) {
        return a.kind == b.kind && a.allowed == b.allowed;
    }
    friend bool operator<(const Guard& a, const Guard& b) {
        return std::tie(a.kind, a.allowed) < std::tie(b.kind, b.allowed);
    }

    std::string describe() const;
};

struct Transition {
    StateId src = 0;
    std::string event;
    Guard guard;
    StateId dst = 0;

    friend bool operator==(const Transition& a, const Transition& b) {
        return a.src == b.src && a.event == b.event && a.guard == b.guard && a.dst == b.dst;
    }
    friend bool operator<(const Transition& a, const Transition& b) {
        return std::tie(a.src, a.event, a.guard, a.dst) < std::tie(b.src, b.event, b.guard, b.dst);
    }
};

class Gfsm {
public:
    StateId add_state();
    void add_state(StateId s);
    void set_initial(StateId s);
    void add_final(StateId s);
    // Deduplicates identical (src, event, guard, dst) quadruples and extends
    // the alphabet with the event.
    void add_transition(Transition t);
    void add_transition(StateId src, const std::string& event, StateId dst,
                        Guard guard = Guard::any());
    void set_label(StateId s, std::string label);

    const std::set<StateId>& states() const { return states_; }
    const std::set<std::string>& alphabet() const { return alphabet_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    StateId initial() const { return initial_; }
    const std::set<StateId>& finals() const { return finals_; }
    bool is_final(StateId s) const { return finals_.count(s) > 0; }
    const std::map<StateId, std::string>& labels() const { return labels_; }
    std::string label(StateId s) const;

    // Transitions leaving s, ordered by (event, guard, dst).
    std::span<const Transition> out(StateId s) const;

    // All states reachable from s by reading the entry (matching event and a
    // satisfied guard). Empty when no transition is enabled.
    std::vector<StateId> step(StateId s, const LogEntry& entry) const;

    bool accepts(const Log& log) const;
    bool accepts(const std::vector<LogEntry>& entries) const;

    // True iff no state has two same-event transitions to different targets
    // whose guards can both hold.
    bool is_deterministic() const;

    void check_valid() const;

private:
    std::set<StateId> states_;
    std::set<std::string> alphabet_;
    std::vector<Transition> transitions_;  // sorted, unique
    StateId initial_ = 0;
    std::set<StateId> finals_;
    std::map<StateId, std::string> labels_;
    StateId next_id_ = 0;
};

// Structural equivalence of two deterministic machines up to state renaming,
// decided by synchronized traversal from the initial states. Raises on
// nondeterministic input.
bool isomorphic(const Gfsm& a, const Gfsm& b);

}  // namespace prins
