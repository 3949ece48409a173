#include "prins/inference.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <stdexcept>
#include <thread>

namespace prins {

namespace {

using ParamVec = std::vector<std::string>;

// One outgoing branch of a state: an event together with the parameter
// vectors observed on it, leading to one target. A state may carry several
// branches for the same event; whether they stay apart is a guard question.
struct Branch {
    std::set<ParamVec> vecs;
    int dst = 0;
};

struct Machine {
    // union-find over state ids; edges store original ids and are resolved on
    // read, so merging is cheap
    std::vector<int> parent;
    std::vector<std::map<std::string, std::vector<Branch>>> out;
    std::vector<char> final_flag;
    bool guards = true;

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    int add_state() {
        int id = static_cast<int>(parent.size());
        parent.push_back(id);
        out.emplace_back();
        final_flag.push_back(0);
        return id;
    }

    std::vector<int> alive_states() {
        std::vector<int> alive;
        for (int s = 0; s < static_cast<int>(parent.size()); ++s)
            if (find(s) == s) alive.push_back(s);
        return alive;
    }
};

std::string vec_key(const ParamVec& v) {
    std::string key;
    for (const auto& p : v) {
        key.push_back('\x1f');
        key += p;
    }
    return key;
}

// Observed value sets per index, over the indices every vector has.
std::map<int, std::set<std::string>> common_index_values(const std::set<ParamVec>& vecs) {
    std::size_t arity = std::string::npos;
    for (const auto& v : vecs) arity = std::min(arity, v.size());
    std::map<int, std::set<std::string>> values;
    if (arity == std::string::npos || arity == 0) return values;
    for (std::size_t i = 0; i < arity; ++i)
        for (const auto& v : vecs) values[static_cast<int>(i)].insert(v[i]);
    return values;
}

bool branches_disjoint(const std::set<ParamVec>& a, const std::set<ParamVec>& b) {
    auto va = common_index_values(a);
    auto vb = common_index_values(b);
    for (const auto& [idx, sa] : va) {
        auto it = vb.find(idx);
        if (it == vb.end()) continue;
        bool common = false;
        for (const auto& v : sa)
            if (it->second.count(v)) {
                common = true;
                break;
            }
        if (!common) return true;
    }
    return false;
}

// Merge target states of conflicting same-event branches until every state is
// consistent: per (state, event) either one target, or guard-separable
// branches. Runs a worklist because merging targets can create new conflicts.
struct Closure {
    Machine& m;

    void run(std::deque<int> work) {
        while (!work.empty()) {
            int s = m.find(work.front());
            work.pop_front();
            normalize(s, work);
        }
    }

    void run_all() {
        std::deque<int> work;
        for (int s : m.alive_states()) work.push_back(s);
        run(std::move(work));
    }

    void merge(int survivor, int other, std::deque<int>& work) {
        survivor = m.find(survivor);
        other = m.find(other);
        if (survivor == other) return;
        if (other < survivor) std::swap(survivor, other);
        m.parent[other] = survivor;
        for (auto& [event, branches] : m.out[other]) {
            auto& slot = m.out[survivor][event];
            slot.insert(slot.end(), branches.begin(), branches.end());
        }
        m.out[other].clear();
        m.final_flag[survivor] |= m.final_flag[other];
        work.push_back(survivor);
    }

private:
    void normalize(int s, std::deque<int>& work) {
        bool again = true;
        while (again) {
            again = false;
            for (auto& [event, branches] : m.out[s]) {
                // group by resolved target
                std::map<int, std::set<ParamVec>> by_dst;
                for (auto& b : branches) {
                    auto& vecs = by_dst[m.find(b.dst)];
                    vecs.insert(b.vecs.begin(), b.vecs.end());
                }
                if (by_dst.size() > 1) {
                    bool split = m.guards && pairwise_disjoint(by_dst);
                    if (!split) {
                        auto it = by_dst.begin();
                        int survivor = it->first;
                        for (++it; it != by_dst.end(); ++it) merge(survivor, it->first, work);
                        // s's branch list now resolves differently; redo s
                        s = m.find(s);
                        again = true;
                        break;
                    }
                }
                rebuild(branches, by_dst);
            }
        }
    }

    static bool pairwise_disjoint(const std::map<int, std::set<ParamVec>>& by_dst) {
        for (auto it = by_dst.begin(); it != by_dst.end(); ++it) {
            auto jt = it;
            for (++jt; jt != by_dst.end(); ++jt)
                if (!branches_disjoint(it->second, jt->second)) return false;
        }
        return true;
    }

    static void rebuild(std::vector<Branch>& branches,
                        const std::map<int, std::set<ParamVec>>& by_dst) {
        branches.clear();
        for (const auto& [dst, vecs] : by_dst) branches.push_back(Branch{vecs, dst});
    }
};

// Prefix tree over (event, params) keyed branches, states renumbered in
// breadth-first order so merge scans are reproducible.
Machine build_trie(const LogSet& logs, bool guards) {
    struct Node {
        std::map<std::pair<std::string, std::string>, int> children;  // (event, vec key) -> node
        std::vector<std::pair<std::string, ParamVec>> labels;         // per child, same order
        bool final_flag = false;
    };
    std::vector<Node> nodes(1);
    std::vector<std::map<std::pair<std::string, std::string>, std::pair<ParamVec, int>>> edges(1);

    for (const auto& log : logs.logs()) {
        int cur = 0;
        for (const auto& e : log.entries) {
            auto key = std::make_pair(e.event, vec_key(e.params));
            auto it = edges[cur].find(key);
            if (it == edges[cur].end()) {
                nodes.emplace_back();
                edges.emplace_back();
                int child = static_cast<int>(nodes.size()) - 1;
                edges[cur].emplace(key, std::make_pair(e.params, child));
                cur = child;
            } else {
                cur = it->second.second;
            }
        }
        nodes[static_cast<std::size_t>(cur)].final_flag = true;
    }

    // breadth-first renumbering, children in (event, params) order
    std::vector<int> bfs_id(nodes.size(), -1);
    std::deque<int> queue{0};
    bfs_id[0] = 0;
    int next = 1;
    std::vector<int> order{0};
    while (!queue.empty()) {
        int n = queue.front();
        queue.pop_front();
        for (const auto& [key, child] : edges[static_cast<std::size_t>(n)]) {
            if (bfs_id[static_cast<std::size_t>(child.second)] == -1) {
                bfs_id[static_cast<std::size_t>(child.second)] = next++;
                order.push_back(child.second);
                queue.push_back(child.second);
            }
        }
    }

    Machine m;
    m.guards = guards;
    for (std::size_t i = 0; i < nodes.size(); ++i) m.add_state();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        int old = order[i];
        m.final_flag[i] = nodes[static_cast<std::size_t>(old)].final_flag ? 1 : 0;
        for (const auto& [key, child] : edges[static_cast<std::size_t>(old)]) {
            Branch b;
            b.vecs.insert(child.first);
            b.dst = bfs_id[static_cast<std::size_t>(child.second)];
            m.out[i][key.first].push_back(std::move(b));
        }
    }
    return m;
}

Gfsm finalize(Machine& m) {
    std::vector<int> alive = m.alive_states();
    std::map<int, StateId> renumber;
    for (std::size_t i = 0; i < alive.size(); ++i) renumber[alive[i]] = static_cast<StateId>(i);

    Gfsm g;
    for (std::size_t i = 0; i < alive.size(); ++i) g.add_state(static_cast<StateId>(i));
    g.set_initial(renumber.at(m.find(0)));
    for (int s : alive) {
        if (m.final_flag[s]) g.add_final(renumber.at(s));
        for (const auto& [event, branches] : m.out[s]) {
            std::map<int, std::set<ParamVec>> by_dst;
            for (const auto& b : branches) {
                auto& vecs = by_dst[m.find(b.dst)];
                vecs.insert(b.vecs.begin(), b.vecs.end());
            }
            for (const auto& [dst, vecs] : by_dst) {
                Guard guard = Guard::any();
                if (by_dst.size() > 1) guard = Guard::values(common_index_values(vecs));
                g.add_transition(renumber.at(s), event, renumber.at(dst), std::move(guard));
            }
        }
    }
    return g;
}

std::size_t longest_log(const LogSet& logs) {
    std::size_t n = 0;
    for (const auto& l : logs.logs()) n = std::max(n, l.entries.size());
    return n;
}

// Merge phase. Two live states are mergeable when
//   (a) they are reached by identical non-empty (event, params) label sets, or
//   (b) their outgoing trees unrolled to depth k are identical and non-empty.
// Pairs are taken in ascending id order (ids are BFS discovery order), the
// lower id survives, and every merge is followed by the determinization
// closure before rescanning.
struct MergeEngine {
    Machine& m;
    int k;

    void run() {
        Closure closure{m};
        while (true) {
            auto pair = next_pair();
            if (pair.first < 0) break;
            std::deque<int> work;
            closure.merge(pair.first, pair.second, work);
            closure.run(std::move(work));
        }
    }

private:
    std::pair<int, int> next_pair() {
        std::vector<int> alive = m.alive_states();
        std::map<std::string, std::vector<int>> incoming_groups;
        {
            std::map<int, std::set<std::string>> incoming;
            for (int s : alive)
                for (const auto& [event, branches] : m.out[s])
                    for (const auto& b : branches)
                        for (const auto& v : b.vecs)
                            incoming[m.find(b.dst)].insert(event + '\x1a' + vec_key(v));
            for (int s : alive) {
                auto it = incoming.find(s);
                if (it == incoming.end() || it->second.empty()) continue;
                std::string key;
                for (const auto& l : it->second) {
                    key += l;
                    key.push_back('\x1e');
                }
                incoming_groups[key].push_back(s);
            }
        }

        std::map<int, std::vector<int>> tree_groups;
        {
            std::map<int, int> sig;
            for (int s : alive) sig[s] = 0;
            for (int depth = 0; depth < k; ++depth) {
                std::map<std::string, int> intern;
                std::map<int, int> next_sig;
                for (int s : alive) {
                    std::vector<std::string> parts;
                    for (const auto& [event, branches] : m.out[s])
                        for (const auto& b : branches) {
                            std::string part = event;
                            part.push_back('\x1d');
                            for (const auto& v : b.vecs) part += vec_key(v) + "\x1c";
                            part += std::to_string(sig.at(m.find(b.dst)));
                            parts.push_back(std::move(part));
                        }
                    std::sort(parts.begin(), parts.end());
                    std::string key;
                    for (const auto& p : parts) {
                        key += p;
                        key.push_back('\x1b');
                    }
                    auto [it, added] = intern.emplace(key, static_cast<int>(intern.size()));
                    next_sig[s] = it->second;
                }
                sig.swap(next_sig);
            }
            for (int s : alive)
                if (!m.out[s].empty()) tree_groups[sig.at(s)].push_back(s);
        }

        std::pair<int, int> best{-1, -1};
        auto consider = [&best](const std::vector<int>& group) {
            if (group.size() < 2) return;
            std::pair<int, int> cand{group[0], group[1]};
            if (best.first < 0 || cand < best) best = cand;
        };
        for (const auto& [key, group] : incoming_groups) consider(group);
        for (const auto& [key, group] : tree_groups) consider(group);
        return best;
    }
};

Gfsm infer_from_trie(Machine m, const LogSet& logs, const InferenceConfig& cfg) {
    if (cfg.k < 0) throw std::runtime_error("k must be non-negative");
    Closure{m}.run_all();
    if (cfg.k == 0) {
        // every state collapses into the initial one
        Closure closure{m};
        std::deque<int> work;
        for (int s : m.alive_states())
            if (s != 0) closure.merge(0, s, work);
        closure.run(std::move(work));
    } else if (static_cast<std::size_t>(cfg.k) <= longest_log(logs)) {
        MergeEngine{m, cfg.k}.run();
    }
    // a horizon beyond every observed future merges nothing further and keeps
    // the prefix tree

    Gfsm g = finalize(m);
    if (!g.is_deterministic())
        throw std::logic_error("inference produced a nondeterministic model");
    return g;
}

}  // namespace

Gfsm build_pta(const LogSet& logs) {
    if (logs.empty()) throw std::runtime_error("cannot build a model from zero logs");
    Machine m = build_trie(logs, true);
    return finalize(m);
}

Gfsm infer_component(const LogSet& logs, const InferenceConfig& cfg) {
    if (logs.empty()) throw std::runtime_error("cannot infer a model from zero logs");
    if (logs.components().size() != 1)
        throw std::runtime_error("component inference expects single-component logs, got " +
                                 std::to_string(logs.components().size()) + " components");
    return infer_from_trie(build_trie(logs, cfg.guard_synthesis), logs, cfg);
}

Gfsm infer_direct(const LogSet& logs, const InferenceConfig& cfg) {
    if (logs.empty()) throw std::runtime_error("cannot infer a model from zero logs");
    return infer_from_trie(build_trie(logs, cfg.guard_synthesis), logs, cfg);
}

std::map<std::string, LogSet> project_all(const LogSet& system_logs) {
    std::map<std::string, LogSet> projections;
    for (const auto& c : system_logs.components()) projections.emplace(c, project(system_logs, c));
    return projections;
}

std::map<std::string, Gfsm> infer_from_projections(const std::map<std::string, LogSet>& projections,
                                                   const InferenceConfig& cfg) {
    if (cfg.max_workers < 1) throw std::runtime_error("max_workers must be >= 1");
    std::vector<const std::pair<const std::string, LogSet>*> items;
    for (const auto& kv : projections) items.push_back(&kv);

    std::vector<Gfsm> results(items.size());
    std::vector<std::exception_ptr> errors(items.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= items.size()) break;
            try {
                results[i] = infer_component(items[i]->second, cfg);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.max_workers), items.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    for (std::size_t i = 0; i < items.size(); ++i) {
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const std::exception& e) {
                throw std::runtime_error("inference failed for component " + items[i]->first + ": " +
                                         e.what());
            }
        }
    }

    std::map<std::string, Gfsm> models;
    for (std::size_t i = 0; i < items.size(); ++i) models.emplace(items[i]->first, std::move(results[i]));
    return models;
}

std::map<std::string, Gfsm> infer_all(const LogSet& system_logs, const InferenceConfig& cfg) {
    if (system_logs.empty()) throw std::runtime_error("cannot infer models from zero logs");
    return infer_from_projections(project_all(system_logs), cfg);
}

}  // namespace prins
