#include "prins/generator.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>

namespace prins {

namespace {

struct ComponentMachine {
    Gfsm machine;
    std::vector<int> dist_to_final;  // shortest #steps to a final state
};

int pick(std::mt19937_64& rng, int n) {
    return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng));
}

ComponentMachine random_machine(const std::string& component, int states, std::mt19937_64& rng) {
    Gfsm m;
    for (int s = 0; s < states; ++s) m.add_state(s);
    m.set_initial(0);

    const int alphabet_size = std::max(2, states);
    auto event_name = [&component](int e) { return component + "_e" + std::to_string(e); };
    std::vector<std::set<int>> used(static_cast<std::size_t>(states));

    auto add_edge = [&](int src, int dst) {
        std::vector<int> free_events;
        for (int e = 0; e < alphabet_size; ++e)
            if (!used[static_cast<std::size_t>(src)].count(e)) free_events.push_back(e);
        if (free_events.empty()) return false;
        int e = free_events[static_cast<std::size_t>(pick(rng, static_cast<int>(free_events.size())))];
        used[static_cast<std::size_t>(src)].insert(e);
        m.add_transition(src, event_name(e), dst);
        return true;
    };

    // spanning edges keep every state reachable, extras add loops and joins
    for (int s = 1; s < states; ++s) {
        while (!add_edge(pick(rng, s), s)) {
        }
    }
    int extras = states;
    for (int i = 0; i < extras; ++i) add_edge(pick(rng, states), pick(rng, states));

    for (int s = 0; s < states; ++s)
        if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.3) m.add_final(s);
    m.add_final(states - 1);
    for (int s = 0; s < states; ++s)
        if (m.out(s).empty()) m.add_final(s);

    // reverse BFS from the finals
    std::vector<int> dist(static_cast<std::size_t>(states), states + 1);
    std::deque<int> queue;
    for (StateId f : m.finals()) {
        dist[static_cast<std::size_t>(f)] = 0;
        queue.push_back(f);
    }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (const auto& t : m.transitions()) {
            if (t.dst != s) continue;
            if (dist[static_cast<std::size_t>(t.src)] > dist[static_cast<std::size_t>(s)] + 1) {
                dist[static_cast<std::size_t>(t.src)] = dist[static_cast<std::size_t>(s)] + 1;
                queue.push_back(t.src);
            }
        }
    }
    for (int s = 0; s < states; ++s)
        if (dist[static_cast<std::size_t>(s)] > states) {
            m.add_final(s);
            dist[static_cast<std::size_t>(s)] = 0;
        }

    // guarantee that walks of length >= 2 exist: when every path out of the
    // initial state dies after one step, give the first such dead end a
    // self-loop
    bool two_steps = false;
    for (const auto& t : m.out(0))
        if (!m.out(t.dst).empty()) {
            two_steps = true;
            break;
        }
    if (!two_steps) {
        StateId stuck = m.out(0).empty() ? 0 : m.out(0).front().dst;
        add_edge(stuck, stuck);
        m.add_final(stuck);
        dist[static_cast<std::size_t>(stuck)] = 0;
    }
    return ComponentMachine{std::move(m), std::move(dist)};
}

std::vector<LogEntry> random_walk(const std::string& component, const ComponentMachine& cm,
                                  int budget, std::mt19937_64& rng) {
    const Gfsm& m = cm.machine;
    std::vector<LogEntry> entries;
    int cur = m.initial();
    int remaining = std::max(budget, cm.dist_to_final[static_cast<std::size_t>(cur)]);
    while (true) {
        bool at_final = m.is_final(cur);
        auto out = m.out(cur);
        if (out.empty()) break;  // dead ends are finals
        if (at_final &&
            (remaining <= 0 || std::uniform_real_distribution<double>(0, 1)(rng) < 0.35))
            break;
        std::vector<const Transition*> viable;
        for (const auto& t : out)
            if (cm.dist_to_final[static_cast<std::size_t>(t.dst)] <= remaining - 1)
                viable.push_back(&t);
        if (viable.empty()) {
            for (const auto& t : out)
                if (cm.dist_to_final[static_cast<std::size_t>(t.dst)] ==
                    cm.dist_to_final[static_cast<std::size_t>(cur)] - 1)
                    viable.push_back(&t);
        }
        if (viable.empty()) break;
        const Transition* t = viable[static_cast<std::size_t>(pick(rng, static_cast<int>(viable.size())))];
        entries.push_back(LogEntry{"", component, t->event, {}});
        cur = t->dst;
        --remaining;
    }
    return entries;
}

}  // namespace

SyntheticCorpus generate_corpus(const GenConfig& cfg) {
    if (cfg.components < 1 || cfg.states_per_component < 1 || cfg.logs < 1 || cfg.max_log_length < 1)
        throw std::runtime_error("infeasible generator parameters");

    std::mt19937_64 rng(cfg.seed);
    SyntheticCorpus corpus;
    std::vector<std::string> names;
    std::vector<ComponentMachine> machines;
    for (int c = 0; c < cfg.components; ++c) {
        names.push_back("C" + std::to_string(c));
        machines.push_back(random_machine(names.back(), cfg.states_per_component, rng));
        corpus.ground_truth.emplace(names.back(), machines.back().machine);
    }

    const int per_component_budget = std::max(1, cfg.max_log_length / cfg.components);
    for (int j = 0; j < cfg.logs; ++j) {
        Log log;
        log.log_id = "log" + std::to_string(j);
        for (int attempt = 0; attempt < 1000 && log.entries.size() < 2; ++attempt) {
            std::vector<std::vector<LogEntry>> walks;
            std::size_t total = 0;
            for (int c = 0; c < cfg.components; ++c) {
                int budget = 1 + pick(rng, per_component_budget);
                walks.push_back(random_walk(names[static_cast<std::size_t>(c)],
                                            machines[static_cast<std::size_t>(c)], budget, rng));
                total += walks.back().size();
            }
            if (total < 2) continue;
            log.entries.clear();
            std::vector<std::size_t> cursor(walks.size(), 0);
            while (log.entries.size() < total) {
                std::vector<int> pending;
                for (std::size_t c = 0; c < walks.size(); ++c)
                    if (cursor[c] < walks[c].size()) pending.push_back(static_cast<int>(c));
                int c = pending[static_cast<std::size_t>(pick(rng, static_cast<int>(pending.size())))];
                log.entries.push_back(walks[static_cast<std::size_t>(c)][cursor[static_cast<std::size_t>(c)]++]);
            }
        }
        if (log.entries.size() < 2)
            throw std::runtime_error("infeasible generator parameters: cannot reach 2 entries per log");
        corpus.logs.add(std::move(log));
    }
    return corpus;
}

}  // namespace prins
