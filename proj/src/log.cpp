#include "prins/log.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace prins {

bool same_entry(const LogEntry& a, const LogEntry& b) {
    return a.component == b.component && a.event == b.event && a.params == b.params;
}

void LogSet::add(Log log) {
    if (log.log_id.empty()) throw std::runtime_error("log_id must be non-empty");
    if (index_.count(log.log_id))
        throw std::runtime_error("duplicate log_id: " + log.log_id);
    index_[log.log_id] = logs_.size();
    for (const auto& e : log.entries) components_.insert(e.component);
    logs_.push_back(std::move(log));
}

const Log* LogSet::find(const std::string& log_id) const {
    auto it = index_.find(log_id);
    return it == index_.end() ? nullptr : &logs_[it->second];
}

std::size_t LogSet::total_entries() const {
    std::size_t n = 0;
    for (const auto& l : logs_) n += l.entries.size();
    return n;
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::vector<std::string> parse_params(const std::string& field) {
    if (field.empty()) return {};
    std::vector<std::string> values;
    std::string cur;
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (field[i] == '\\' && i + 1 < field.size() && field[i + 1] == ';') {
            cur.push_back(';');
            ++i;
        } else if (field[i] == ';') {
            values.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(field[i]);
        }
    }
    values.push_back(cur);
    return values;
}

std::string format_params(const std::vector<std::string>& params) {
    std::string out;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out.push_back(';');
        for (char c : params[i]) {
            if (c == ';') out += "\\;";
            else out.push_back(c);
        }
    }
    return out;
}

[[noreturn]] void row_error(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("csv line " + std::to_string(line_no) + ": " + what);
}

void check_csv_field(const std::string& value, const char* name) {
    if (value.find(',') != std::string::npos || value.find('\n') != std::string::npos)
        throw std::runtime_error(std::string(name) + " contains a comma or newline, not representable in csv: " + value);
}

}  // namespace

LogSet parse_logs(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw std::runtime_error("empty input, expected csv header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "log_id,seq,timestamp,component,event,params")
        throw std::runtime_error("bad csv header: " + line);

    struct Row {
        long long seq;
        LogEntry entry;
    };
    // Grouped per log_id in first-appearance order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<Row>> rows;
    std::map<std::string, std::set<long long>> seen_seq;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_row(line);
        if (fields.size() != 6) row_error(line_no, "expected 6 columns, got " + std::to_string(fields.size()));
        const std::string& log_id = fields[0];
        if (log_id.empty()) row_error(line_no, "empty log_id");
        long long seq = 0;
        try {
            std::size_t pos = 0;
            seq = std::stoll(fields[1], &pos);
            if (pos != fields[1].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            row_error(line_no, "seq is not an integer: " + fields[1]);
        }
        if (seq < 0) row_error(line_no, "seq must be non-negative");
        if (fields[3].empty()) row_error(line_no, "empty component");
        if (fields[4].empty()) row_error(line_no, "empty event");
        if (!seen_seq[log_id].insert(seq).second)
            row_error(line_no, "duplicate (log_id, seq): (" + log_id + ", " + std::to_string(seq) + ")");
        if (!rows.count(log_id)) order.push_back(log_id);
        rows[log_id].push_back(Row{seq, LogEntry{fields[2], fields[3], fields[4], parse_params(fields[5])}});
    }

    LogSet result;
    for (const auto& id : order) {
        auto& group = rows[id];
        std::stable_sort(group.begin(), group.end(),
                         [](const Row& a, const Row& b) { return a.seq < b.seq; });
        Log log;
        log.log_id = id;
        for (auto& r : group) log.entries.push_back(std::move(r.entry));
        result.add(std::move(log));
    }
    return result;
}

LogSet parse_logs_text(const std::string& text) {
    std::istringstream in(text);
    return parse_logs(in);
}

LogSet parse_logs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_logs(in);
}

void write_csv(const LogSet& logs, std::ostream& out) {
    out << "log_id,seq,timestamp,component,event,params\n";
    for (const auto& log : logs.logs()) {
        check_csv_field(log.log_id, "log_id");
        long long seq = 0;
        for (const auto& e : log.entries) {
            check_csv_field(e.timestamp, "timestamp");
            check_csv_field(e.component, "component");
            check_csv_field(e.event, "event");
            std::string params = format_params(e.params);
            check_csv_field(params, "params");
            out << log.log_id << ',' << seq++ << ',' << e.timestamp << ',' << e.component << ','
                << e.event << ',' << params << '\n';
        }
    }
}

std::string to_csv(const LogSet& logs) {
    std::ostringstream out;
    write_csv(logs, out);
    return out.str();
}

LogSet project(const LogSet& logs, const std::string& component) {
    if (!logs.components().count(component))
        throw std::runtime_error("unknown component: " + component);
    LogSet result;
    for (const auto& log : logs.logs()) {
        Log projected;
        projected.log_id = log.log_id;
        for (const auto& e : log.entries)
            if (e.component == component) projected.entries.push_back(e);
        if (!projected.entries.empty()) result.add(std::move(projected));
    }
    return result;
}

std::vector<LogPart> partition(const Log& log) {
    if (log.entries.empty()) throw std::runtime_error("cannot partition an empty log");
    std::vector<LogPart> parts;
    for (const auto& e : log.entries) {
        if (parts.empty() || parts.back().component != e.component) {
            parts.push_back(LogPart{e.component, Log{log.log_id, {}}});
        }
        parts.back().part.entries.push_back(e);
    }
    return parts;
}

LogSet duplicate(const LogSet& logs, int factor) {
    if (factor < 1) throw std::runtime_error("duplication factor must be >= 1");
    LogSet result;
    for (const auto& log : logs.logs()) {
        for (int i = 1; i <= factor; ++i) {
            Log copy = log;
            copy.log_id = log.log_id + "#" + std::to_string(i);
            result.add(std::move(copy));
        }
    }
    return result;
}

Log swap_entries(const Log& log, std::size_t i, std::size_t j) {
    if (i >= log.entries.size() || j >= log.entries.size())
        throw std::runtime_error("swap position out of range");
    Log out = log;
    std::swap(out.entries[i], out.entries[j]);
    return out;
}

Log delete_entry(const Log& log, std::size_t i) {
    if (i >= log.entries.size()) throw std::runtime_error("delete position out of range");
    Log out = log;
    out.entries.erase(out.entries.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
}

Log insert_entry(const Log& log, std::size_t pos, const LogEntry& entry) {
    if (pos > log.entries.size()) throw std::runtime_error("insert position out of range");
    Log out = log;
    out.entries.insert(out.entries.begin() + static_cast<std::ptrdiff_t>(pos), entry);
    return out;
}

namespace {

bool window_occurs(const std::vector<LogEntry>& window, const LogSet& positives) {
    if (window.empty()) return true;
    for (const auto& log : positives.logs()) {
        if (log.entries.size() < window.size()) continue;
        for (std::size_t t = 0; t + window.size() <= log.entries.size(); ++t) {
            bool match = true;
            for (std::size_t k = 0; k < window.size(); ++k) {
                if (!same_entry(log.entries[t + k], window[k])) {
                    match = false;
                    break;
                }
            }
            if (match) return true;
        }
    }
    return false;
}

// Windows around the touched positions, one neighbor on each side, with
// overlapping ranges coalesced.
std::vector<std::vector<LogEntry>> mutation_windows(const Log& mutated,
                                                    std::vector<std::size_t> touched) {
    std::sort(touched.begin(), touched.end());
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    const std::size_t n = mutated.entries.size();
    for (std::size_t p : touched) {
        std::size_t lo = p > 0 ? p - 1 : 0;
        std::size_t hi = std::min(p + 1, n > 0 ? n - 1 : 0);
        if (!ranges.empty() && lo <= ranges.back().second + 1)
            ranges.back().second = std::max(ranges.back().second, hi);
        else
            ranges.emplace_back(lo, hi);
    }
    std::vector<std::vector<LogEntry>> windows;
    for (auto [lo, hi] : ranges) {
        std::vector<LogEntry> w(mutated.entries.begin() + static_cast<std::ptrdiff_t>(lo),
                                mutated.entries.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
        windows.push_back(std::move(w));
    }
    return windows;
}

bool windows_absent(const Log& mutated, const std::vector<std::size_t>& touched,
                    const LogSet& positives) {
    if (mutated.entries.empty()) return false;
    for (const auto& w : mutation_windows(mutated, touched))
        if (window_occurs(w, positives)) return false;
    return true;
}

}  // namespace

LogSet mutate_negative(const LogSet& logs, const LogSet& positives, std::uint64_t seed,
                       int per_log_attempts) {
    if (logs.empty()) throw std::runtime_error("cannot synthesize negatives from an empty log set");
    std::mt19937_64 rng(seed);
    LogSet result;
    std::size_t produced = 0;

    // Insert operator draws from all entries of other executions in `positives`.
    for (const auto& log : logs.logs()) {
        bool done = false;
        for (int attempt = 0; attempt < per_log_attempts && !done; ++attempt) {
            const std::size_t n = log.entries.size();
            std::uniform_int_distribution<int> op_dist(0, 2);
            int op = op_dist(rng);
            Log mutated;
            std::vector<std::size_t> touched;
            if (op == 0) {
                if (n < 2) continue;
                std::uniform_int_distribution<std::size_t> pos(0, n - 1);
                std::size_t i = pos(rng), j = pos(rng);
                if (i == j) continue;
                mutated = swap_entries(log, i, j);
                touched = {i, j};
            } else if (op == 1) {
                if (n < 2) continue;
                std::uniform_int_distribution<std::size_t> pos(0, n - 1);
                std::size_t i = pos(rng);
                mutated = delete_entry(log, i);
                // the now-adjacent pair around the removal site
                if (i > 0) touched.push_back(i - 1);
                if (i < mutated.entries.size()) touched.push_back(i);
            } else {
                std::vector<const LogEntry*> pool;
                for (const auto& other : positives.logs()) {
                    if (other.log_id == log.log_id) continue;
                    for (const auto& e : other.entries) pool.push_back(&e);
                }
                if (pool.empty()) continue;
                std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
                std::uniform_int_distribution<std::size_t> pos(0, n);
                std::size_t at = pos(rng);
                mutated = insert_entry(log, at, *pool[pick(rng)]);
                touched = {at};
            }
            if (!windows_absent(mutated, touched, positives)) continue;
            mutated.log_id = log.log_id + "__neg";
            result.add(std::move(mutated));
            ++produced;
            done = true;
        }
        if (!done)
            std::cerr << "warning: no valid negative for log " << log.log_id << " after "
                      << per_log_attempts << " attempts, skipping\n";
    }
    if (produced == 0) throw std::runtime_error("cannot synthesize negatives");
    return result;
}

LogSet mutate_negative(const LogSet& logs, std::uint64_t seed, int per_log_attempts) {
    return mutate_negative(logs, logs, seed, per_log_attempts);
}

}  // namespace prins
