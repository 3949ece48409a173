#include "prins/gfsm.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace prins {

Guard Guard::values(std::map<int, std::set<std::string>> allowed) {
    Guard g;
    g.kind = Kind::value_set;
    g.allowed = std::move(allowed);
    return g;
}

bool Guard::eval(const std::vector<std::string>& params) const {
    if (kind == Kind::always_true) return true;
    for (const auto& [idx, values] : allowed) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= params.size()) return false;
        if (!values.count(params[static_cast<std::size_t>(idx)])) return false;
    }
    return true;
}

bool Guard::overlaps(const Guard& other) const {
    if (kind == Kind::always_true || other.kind == Kind::always_true) return true;
    for (const auto& [idx, values] : allowed) {
        auto it = other.allowed.find(idx);
        if (it == other.allowed.end()) continue;
        bool common = false;
        for (const auto& v : values) {
            if (it->second.count(v)) {
                common = true;
                break;
            }
        }
        if (!common) return false;
    }
    return true;
}

std::string Guard::describe() const {
    if (kind == Kind::always_true) return "";
    std::ostringstream out;
    bool first = true;
    for (const auto& [idx, values] : allowed) {
        if (!first) out << " & ";
        first = false;
        out << 'p' << idx << " in {";
        bool f2 = true;
        for (const auto& v : values) {
            if (!f2) out << ',';
            f2 = false;
            out << v;
        }
        out << '}';
    }
    return out.str();
}

StateId Gfsm::add_state() {
    StateId s = next_id_++;
    states_.insert(s);
    return s;
}

void Gfsm::add_state(StateId s) {
    states_.insert(s);
    if (s >= next_id_) next_id_ = s + 1;
}

void Gfsm::set_initial(StateId s) {
    add_state(s);
    initial_ = s;
}

void Gfsm::add_final(StateId s) {
    add_state(s);
    finals_.insert(s);
}

void Gfsm::add_transition(Transition t) {
    add_state(t.src);
    add_state(t.dst);
    alphabet_.insert(t.event);
    auto it = std::lower_bound(transitions_.begin(), transitions_.end(), t);
    if (it != transitions_.end() && *it == t) return;
    transitions_.insert(it, std::move(t));
}

void Gfsm::add_transition(StateId src, const std::string& event, StateId dst, Guard guard) {
    add_transition(Transition{src, event, std::move(guard), dst});
}

void Gfsm::set_label(StateId s, std::string label) { labels_[s] = std::move(label); }

std::string Gfsm::label(StateId s) const {
    auto it = labels_.find(s);
    return it == labels_.end() ? std::to_string(s) : it->second;
}

std::span<const Transition> Gfsm::out(StateId s) const {
    Transition lo{s, "", Guard::any(), 0};
    auto begin = std::lower_bound(transitions_.begin(), transitions_.end(), lo,
                                  [](const Transition& t, const Transition& v) { return t.src < v.src; });
    auto end = begin;
    while (end != transitions_.end() && end->src == s) ++end;
    if (begin == end) return {};
    return {&*begin, static_cast<std::size_t>(end - begin)};
}

std::vector<StateId> Gfsm::step(StateId s, const LogEntry& entry) const {
    if (!states_.count(s)) throw std::runtime_error("step from unknown state " + std::to_string(s));
    std::vector<StateId> targets;
    for (const auto& t : out(s)) {
        if (t.event != entry.event) continue;
        if (!t.guard.eval(entry.params)) continue;
        targets.push_back(t.dst);
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    return targets;
}

bool Gfsm::accepts(const std::vector<LogEntry>& entries) const {
    std::set<StateId> frontier{initial_};
    for (const auto& e : entries) {
        std::set<StateId> next;
        for (StateId s : frontier)
            for (StateId t : step(s, e)) next.insert(t);
        frontier.swap(next);
        if (frontier.empty()) return false;
    }
    for (StateId s : frontier)
        if (finals_.count(s)) return true;
    return false;
}

bool Gfsm::accepts(const Log& log) const { return accepts(log.entries); }

bool Gfsm::is_deterministic() const {
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        for (std::size_t j = i + 1; j < transitions_.size(); ++j) {
            const auto& a = transitions_[i];
            const auto& b = transitions_[j];
            if (a.src != b.src) break;  // sorted by src first
            if (a.event != b.event) continue;
            if (a.dst == b.dst) continue;
            if (a.guard.overlaps(b.guard)) return false;
        }
    }
    return true;
}

void Gfsm::check_valid() const {
    if (!states_.count(initial_)) throw std::runtime_error("initial state not in state set");
    for (StateId f : finals_)
        if (!states_.count(f)) throw std::runtime_error("final state not in state set");
    for (const auto& t : transitions_) {
        if (!states_.count(t.src) || !states_.count(t.dst))
            throw std::runtime_error("transition endpoint not in state set");
        if (!alphabet_.count(t.event)) throw std::runtime_error("transition event not in alphabet");
    }
}

bool isomorphic(const Gfsm& a, const Gfsm& b) {
    if (!a.is_deterministic() || !b.is_deterministic())
        throw std::runtime_error("isomorphism check requires deterministic machines");
    if (a.states().size() != b.states().size()) return false;
    if (a.finals().size() != b.finals().size()) return false;
    if (a.transitions().size() != b.transitions().size()) return false;
    if (a.alphabet() != b.alphabet()) return false;

    std::map<StateId, StateId> fwd;
    std::map<StateId, StateId> bwd;
    std::deque<std::pair<StateId, StateId>> queue;
    fwd[a.initial()] = b.initial();
    bwd[b.initial()] = a.initial();
    queue.emplace_back(a.initial(), b.initial());

    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        if (a.is_final(x) != b.is_final(y)) return false;
        auto ox = a.out(x);
        auto oy = b.out(y);
        if (ox.size() != oy.size()) return false;
        // Determinism makes (event, guard) keys unique per source, and both
        // spans are sorted by them, so targets pair up positionally.
        for (std::size_t i = 0; i < ox.size(); ++i) {
            if (ox[i].event != oy[i].event || !(ox[i].guard == oy[i].guard)) return false;
            StateId tx = ox[i].dst;
            StateId ty = oy[i].dst;
            auto fit = fwd.find(tx);
            auto bit = bwd.find(ty);
            if (fit == fwd.end() && bit == bwd.end()) {
                fwd[tx] = ty;
                bwd[ty] = tx;
                queue.emplace_back(tx, ty);
            } else if (fit == fwd.end() || bit == bwd.end() || fit->second != ty || bit->second != tx) {
                return false;
            }
        }
    }
    // All states must be covered; otherwise unreachable parts differ silently.
    return fwd.size() == a.states().size();
}

}  // namespace prins
