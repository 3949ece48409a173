#include "prins/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace prins {

namespace {

ordered_json guard_to_json(const Guard& g) {
    ordered_json j;
    if (g.kind == Guard::Kind::always_true) {
        j["kind"] = "always_true";
    } else {
        j["kind"] = "value_set";
        ordered_json params = ordered_json::object();
        for (const auto& [idx, values] : g.allowed) {
            params[std::to_string(idx)] = std::vector<std::string>(values.begin(), values.end());
        }
        j["params"] = std::move(params);
    }
    return j;
}

Guard guard_from_json(const ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "always_true") return Guard::any();
    if (kind != "value_set") throw std::runtime_error("unknown guard kind: " + kind);
    std::map<int, std::set<std::string>> allowed;
    for (const auto& [key, values] : j.at("params").items()) {
        std::set<std::string>& slot = allowed[std::stoi(key)];
        for (const auto& v : values) slot.insert(v.get<std::string>());
    }
    return Guard::values(std::move(allowed));
}

}  // namespace

ordered_json model_to_json(const Gfsm& m) {
    ordered_json j;
    j["states"] = std::vector<StateId>(m.states().begin(), m.states().end());
    j["alphabet"] = std::vector<std::string>(m.alphabet().begin(), m.alphabet().end());
    j["initial"] = m.initial();
    j["finals"] = std::vector<StateId>(m.finals().begin(), m.finals().end());
    ordered_json transitions = ordered_json::array();
    for (const auto& t : m.transitions()) {
        ordered_json tj;
        tj["src"] = t.src;
        tj["event"] = t.event;
        tj["guard"] = guard_to_json(t.guard);
        tj["dst"] = t.dst;
        transitions.push_back(std::move(tj));
    }
    j["transitions"] = std::move(transitions);
    if (!m.labels().empty()) {
        ordered_json labels = ordered_json::object();
        for (const auto& [s, label] : m.labels()) labels[std::to_string(s)] = label;
        j["labels"] = std::move(labels);
    }
    return j;
}

Gfsm model_from_json(const ordered_json& j) {
    Gfsm m;
    for (const auto& s : j.at("states")) m.add_state(s.get<StateId>());
    m.set_initial(j.at("initial").get<StateId>());
    for (const auto& s : j.at("finals")) m.add_final(s.get<StateId>());
    for (const auto& tj : j.at("transitions")) {
        m.add_transition(Transition{tj.at("src").get<StateId>(), tj.at("event").get<std::string>(),
                                    guard_from_json(tj.at("guard")), tj.at("dst").get<StateId>()});
    }
    if (j.contains("labels"))
        for (const auto& [key, label] : j.at("labels").items())
            m.set_label(std::stoi(key), label.get<std::string>());
    m.check_valid();
    return m;
}

std::string model_to_json_text(const Gfsm& m) { return model_to_json(m).dump(2) + "\n"; }

Gfsm model_from_json_text(const std::string& text) {
    return model_from_json(ordered_json::parse(text));
}

std::string model_to_dot(const Gfsm& m) {
    std::ostringstream out;
    out << "digraph gfsm {\n  rankdir=LR;\n  __start [shape=point];\n";
    for (StateId s : m.states()) {
        out << "  s" << s << " [shape=" << (m.is_final(s) ? "doublecircle" : "circle")
            << ", label=\"s" << m.label(s) << "\"];\n";
    }
    out << "  __start -> s" << m.initial() << ";\n";
    for (const auto& t : m.transitions()) {
        std::string guard = t.guard.describe();
        out << "  s" << t.src << " -> s" << t.dst << " [label=\"" << t.event;
        if (!guard.empty()) out << " [" << guard << "]";
        out << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

ordered_json logset_to_json(const LogSet& logs) {
    ordered_json j;
    ordered_json arr = ordered_json::array();
    for (const auto& log : logs.logs()) {
        ordered_json lj;
        lj["log_id"] = log.log_id;
        ordered_json entries = ordered_json::array();
        for (const auto& e : log.entries) {
            ordered_json ej;
            ej["timestamp"] = e.timestamp;
            ej["component"] = e.component;
            ej["event"] = e.event;
            ej["params"] = e.params;
            entries.push_back(std::move(ej));
        }
        lj["entries"] = std::move(entries);
        arr.push_back(std::move(lj));
    }
    j["logs"] = std::move(arr);
    return j;
}

LogSet logset_from_json(const ordered_json& j) {
    LogSet logs;
    for (const auto& lj : j.at("logs")) {
        Log log;
        log.log_id = lj.at("log_id").get<std::string>();
        for (const auto& ej : lj.at("entries")) {
            LogEntry e;
            e.timestamp = ej.at("timestamp").get<std::string>();
            e.component = ej.at("component").get<std::string>();
            e.event = ej.at("event").get<std::string>();
            e.params = ej.at("params").get<std::vector<std::string>>();
            log.entries.push_back(std::move(e));
        }
        logs.add(std::move(log));
    }
    return logs;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace prins
