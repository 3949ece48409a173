#include "prins/stitching.hpp"

#include <algorithm>
#include <stdexcept>

namespace prins {

StitchContext StitchContext::init(const std::map<std::string, Gfsm>& models) {
    StitchContext ctx;
    for (const auto& [component, model] : models) ctx.slice_start[component] = model.initial();
    return ctx;
}

SlicedModel slice(const Gfsm& model, StitchContext& ctx, const Log& part) {
    if (part.entries.empty()) throw std::runtime_error("cannot slice over an empty log part");
    const std::string component = part.entries.front().component;
    for (const auto& e : part.entries)
        if (e.component != component)
            throw std::runtime_error("slice expects a single-component log part");
    auto start_it = ctx.slice_start.find(component);
    if (start_it == ctx.slice_start.end())
        throw std::runtime_error("no slice start state for component " + component);

    SlicedModel result;
    result.origin = component;
    Gfsm& out = result.machine;

    std::map<StateId, StateId> copied;
    auto copy_of = [&](StateId origin_state) {
        auto it = copied.find(origin_state);
        if (it != copied.end()) return it->second;
        StateId fresh = out.add_state();
        out.set_label(fresh, model.label(origin_state));
        copied.emplace(origin_state, fresh);
        return fresh;
    };

    StateId cur = start_it->second;
    out.set_initial(copy_of(cur));
    for (const auto& e : part.entries) {
        const Transition* taken = nullptr;
        for (const auto& t : model.out(cur)) {
            if (t.event != e.event || !t.guard.eval(e.params)) continue;
            taken = &t;
            break;
        }
        if (!taken)
            throw std::runtime_error("slice failure: component " + component + " model has no transition from state " +
                                     std::to_string(cur) + " on event " + e.event);
        out.add_transition(copy_of(taken->src), taken->event, copy_of(taken->dst), taken->guard);
        cur = taken->dst;
    }
    out.add_final(copy_of(cur));
    ctx.slice_start[component] = cur;
    return result;
}

namespace {

std::string joined_label(const Gfsm& a, StateId sa, const Gfsm& b, StateId sb) {
    return a.label(sa) + "," + b.label(sb);
}

}  // namespace

Gfsm append(const std::optional<Gfsm>& accumulator, const SlicedModel& sliced) {
    if (!accumulator.has_value()) return sliced.machine;
    const Gfsm& acc = *accumulator;
    const Gfsm& sl = sliced.machine;
    if (acc.finals().size() != 1)
        throw std::runtime_error("append expects an accumulator with exactly one final state, got " +
                                 std::to_string(acc.finals().size()));

    StateId junction = *acc.finals().begin();
    Gfsm out;
    for (StateId s : acc.states()) out.add_state(s);
    out.set_initial(acc.initial());
    for (const auto& [s, label] : acc.labels()) out.set_label(s, label);
    for (const auto& t : acc.transitions()) out.add_transition(t);

    // slice states renumbered after the accumulator, its initial mapped onto
    // the junction; the merged node records both ancestors
    StateId base = acc.states().empty() ? 0 : *acc.states().rbegin() + 1;
    std::map<StateId, StateId> mapped;
    for (StateId s : sl.states()) {
        if (s == sl.initial()) {
            mapped[s] = junction;
        } else {
            StateId fresh = base++;
            out.add_state(fresh);
            out.set_label(fresh, sl.label(s));
            mapped[s] = fresh;
        }
    }
    out.set_label(junction, joined_label(acc, junction, sl, sl.initial()));
    for (const auto& t : sl.transitions())
        out.add_transition(mapped.at(t.src), t.event, mapped.at(t.dst), t.guard);
    for (StateId f : sl.finals()) out.add_final(mapped.at(f));
    return out;
}

Gfsm union_models(const std::vector<Gfsm>& models) {
    if (models.empty()) throw std::runtime_error("cannot take the union of zero models");
    if (models.size() == 1) return models.front();

    Gfsm out;
    StateId merged_initial = out.add_state();
    out.set_initial(merged_initial);
    std::string initial_label;

    StateId base = merged_initial + 1;
    for (const auto& m : models) {
        std::map<StateId, StateId> mapped;
        for (StateId s : m.states()) {
            if (s == m.initial()) {
                mapped[s] = merged_initial;
            } else {
                StateId fresh = base++;
                out.add_state(fresh);
                out.set_label(fresh, m.label(s));
                mapped[s] = fresh;
            }
        }
        if (!initial_label.empty()) initial_label += ",";
        initial_label += m.label(m.initial());
        for (const auto& t : m.transitions())
            out.add_transition(mapped.at(t.src), t.event, mapped.at(t.dst), t.guard);
        for (StateId f : m.finals()) out.add_final(mapped.at(f));
    }
    out.set_label(merged_initial, initial_label);
    return out;
}

Gfsm stitch(const LogSet& system_logs, const std::map<std::string, Gfsm>& component_models) {
    if (system_logs.empty()) throw std::runtime_error("cannot stitch zero logs");
    for (const auto& c : system_logs.components()) {
        auto it = component_models.find(c);
        if (it == component_models.end())
            throw std::runtime_error("no component model for " + c);
        if (!it->second.is_deterministic())
            throw std::runtime_error("component model for " + c + " is nondeterministic");
    }

    std::vector<Gfsm> per_log;
    for (const auto& log : system_logs.logs()) {
        StitchContext ctx = StitchContext::init(component_models);
        std::optional<Gfsm> accumulator;
        for (const auto& part : partition(log)) {
            SlicedModel sl = slice(component_models.at(part.component), ctx, part.part);
            accumulator = append(accumulator, sl);
        }
        per_log.push_back(std::move(*accumulator));
    }
    return union_models(per_log);
}

}  // namespace prins
