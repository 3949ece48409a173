#include "prins/determinize.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace prins {

std::set<StateId> get_target_states_with_limit(const Gfsm& m, const MergeLedger& ledger, int u) {
    if (u < 0) throw std::runtime_error("merge limit u must be non-negative");
    const auto& ts = m.transitions();
    std::size_t i = 0;
    while (i < ts.size()) {
        std::size_t j = i;
        std::set<StateId> targets;
        while (j < ts.size() && ts[j].src == ts[i].src && ts[j].event == ts[i].event &&
               ts[j].guard == ts[i].guard) {
            targets.insert(ts[j].dst);
            ++j;
        }
        if (targets.size() > 1) {
            std::set<StateId> mergeable;
            for (StateId s : targets)
                if (ledger.count(s) < u) mergeable.insert(s);
            if (mergeable.size() > 1) return mergeable;
        }
        i = j;
    }
    return {};
}

namespace {

// In-place merging support: edges keep their original endpoints and are
// resolved through a union-find when read, so one merge is O(1) plus the
// rescan the caller does anyway.
struct Merger {
    explicit Merger(const Gfsm& m) : machine(m) {
        for (StateId s : m.states()) parent[s] = s;
    }

    Gfsm machine;
    std::map<StateId, StateId> parent;
    MergeLedger ledger;

    StateId find(StateId x) {
        while (parent.at(x) != x) {
            parent[x] = parent.at(parent.at(x));
            x = parent.at(x);
        }
        return x;
    }

    void merge(const std::set<StateId>& group) {
        StateId survivor = *group.begin();
        int worst = 0;
        for (StateId s : group) worst = std::max(worst, ledger.count(s));
        for (StateId s : group)
            if (s != survivor) parent[s] = survivor;
        ledger.merge_count[survivor] = worst + 1;
    }

    // Rebuilds a Gfsm over the union-find roots, ids renumbered ascending.
    Gfsm current() {
        std::map<StateId, StateId> renumber;
        for (const auto& [s, p] : parent)
            if (find(s) == s) renumber.emplace(s, static_cast<StateId>(renumber.size()));

        std::map<StateId, std::string> provenance;
        for (StateId s : machine.states()) {
            StateId root = find(s);
            auto& label = provenance[root];
            if (!label.empty()) label += ",";
            label += machine.label(s);
        }

        Gfsm out;
        for (const auto& [root, id] : renumber) out.add_state(id);
        out.set_initial(renumber.at(find(machine.initial())));
        for (StateId f : machine.finals()) out.add_final(renumber.at(find(f)));
        for (const auto& t : machine.transitions())
            out.add_transition(renumber.at(find(t.src)), t.event, renumber.at(find(t.dst)), t.guard);
        for (const auto& [root, label] : provenance) out.set_label(renumber.at(root), label);
        return out;
    }
};

// Residual nondeterminism that the label-wise powerset cannot see: same-event
// transitions under distinct but overlapping guards. Merging their targets
// only generalizes, which the output contract allows.
Gfsm merge_overlapping(Gfsm m) {
    while (!m.is_deterministic()) {
        const auto& ts = m.transitions();
        std::set<StateId> group;
        for (std::size_t i = 0; i < ts.size() && group.empty(); ++i) {
            for (std::size_t j = i + 1; j < ts.size(); ++j) {
                if (ts[j].src != ts[i].src) break;
                if (ts[j].event != ts[i].event || ts[j].dst == ts[i].dst) continue;
                if (ts[i].guard.overlaps(ts[j].guard)) {
                    group = {ts[i].dst, ts[j].dst};
                    break;
                }
            }
        }
        if (group.empty()) break;
        Merger merger(m);
        merger.merge(group);
        m = merger.current();
    }
    return m;
}

}  // namespace

Gfsm powerset(const Gfsm& m) {
    using Subset = std::vector<StateId>;
    std::map<Subset, StateId> ids;
    std::deque<Subset> queue;

    Gfsm out;
    Subset start{m.initial()};
    ids.emplace(start, out.add_state());
    queue.push_back(start);

    auto subset_label = [&m](const Subset& subset) {
        std::string label = "{";
        for (std::size_t i = 0; i < subset.size(); ++i) {
            if (i) label += ",";
            label += m.label(subset[i]);
        }
        return label + "}";
    };
    out.set_label(0, subset_label(start));
    out.set_initial(0);

    while (!queue.empty()) {
        Subset subset = queue.front();
        queue.pop_front();
        StateId id = ids.at(subset);
        bool final_flag = false;
        std::map<std::pair<std::string, Guard>, std::set<StateId>> moves;
        for (StateId s : subset) {
            if (m.is_final(s)) final_flag = true;
            for (const auto& t : m.out(s)) moves[{t.event, t.guard}].insert(t.dst);
        }
        if (final_flag) out.add_final(id);
        for (const auto& [label, targets] : moves) {
            Subset next(targets.begin(), targets.end());
            auto [it, added] = ids.emplace(next, static_cast<StateId>(ids.size()));
            if (added) {
                out.add_state(it->second);
                out.set_label(it->second, subset_label(next));
                queue.push_back(next);
            }
            out.add_transition(id, label.first, it->second, label.second);
        }
    }
    return out;
}

Gfsm hybrid_determinize(const Gfsm& m, int u) {
    if (u < 0) throw std::runtime_error("merge limit u must be non-negative");
    Merger merger(m);

    // Live adjacency, merged alongside the union-find so each rescan can walk
    // states in ascending id order and stop at the first conflict. Edge
    // targets stay unresolved and are read through find().
    using Label = std::pair<std::string, Guard>;
    std::map<StateId, std::map<Label, std::set<StateId>>> out;
    for (const auto& t : m.transitions()) out[t.src][{t.event, t.guard}].insert(t.dst);
    for (StateId s : m.states()) out.try_emplace(s);

    // Every merge restarts the scan from the beginning, per the conflict
    // selection contract: first (src, event, guard) group in ascending order.
    // States verified conflict-free are skipped on later rescans; merging
    // cannot introduce a conflict anywhere except at the surviving state,
    // which re-enters the scan set.
    std::set<StateId> pending;
    for (const auto& [s, labels] : out) pending.insert(s);
    while (true) {
        std::set<StateId> group;
        for (auto it = pending.begin(); it != pending.end() && group.empty();) {
            StateId src = *it;
            auto& labels = out.at(src);
            for (auto& [label, dsts] : labels) {
                std::set<StateId> targets;
                for (StateId d : dsts) targets.insert(merger.find(d));
                if (targets != dsts) dsts = targets;  // compact resolved ids
                if (targets.size() > 1) {
                    std::set<StateId> mergeable;
                    for (StateId s : targets)
                        if (merger.ledger.count(s) < u) mergeable.insert(s);
                    if (mergeable.size() > 1) {
                        group = mergeable;
                        break;
                    }
                }
            }
            if (group.empty()) it = pending.erase(it);
        }
        if (group.empty()) break;

        merger.merge(group);
        StateId survivor = *group.begin();
        auto& absorbed = out[survivor];
        for (StateId s : group) {
            if (s == survivor) continue;
            pending.erase(s);
            auto it = out.find(s);
            if (it == out.end()) continue;
            for (auto& [label, dsts] : it->second) absorbed[label].insert(dsts.begin(), dsts.end());
            out.erase(it);
        }
        pending.insert(survivor);
    }

    Gfsm result = merger.current();
    if (!result.is_deterministic()) result = powerset(result);
    if (!result.is_deterministic()) result = merge_overlapping(result);
    return result;
}

}  // namespace prins
