// Structured execution logs: entries attributed to components, grouped per
// execution, plus the operations the pipeline needs on them (CSV parsing,
// projection, partitioning, duplication, negative-log synthesis).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace prins {

struct LogEntry {
    std::string timestamp;  // opaque; never compared
    std::string component;
    std::string event;
    std::vector<std::string> params;
};

// Entry identity for automaton purposes: (component, event, params).
bool same_entry(const LogEntry& a, const LogEntry& b);

struct Log {
    std::string log_id;
    std::vector<LogEntry> entries;
};

// A set of logs with unique ids, kept in first-insertion order so that every
// downstream artifact is reproducible from the input order.
class LogSet {
public:
    void add(Log log);

    const std::vector<Log>& logs() const { return logs_; }
    const Log* find(const std::string& log_id) const;
    bool contains(const std::string& log_id) const { return index_.count(log_id) > 0; }

    bool empty() const { return logs_.empty(); }
    std::size_t size() const { return logs_.size(); }
    std::size_t total_entries() const;

    // Union of component names over all entries.
    const std::set<std::string>& components() const { return components_; }

private:
    std::vector<Log> logs_;
    std::map<std::string, std::size_t> index_;
    std::set<std::string> components_;
};

// CSV schema: header `log_id,seq,timestamp,component,event,params`.
// seq is a non-negative integer, unique per log_id; params are
// semicolon-separated with literal semicolons escaped as `\;`.
// Malformed rows raise std::runtime_error naming the line number.
LogSet parse_logs(std::istream& in);
LogSet parse_logs_text(const std::string& text);
LogSet parse_logs_file(const std::string& path);

void write_csv(const LogSet& logs, std::ostream& out);
std::string to_csv(const LogSet& logs);

// Keep only `component`'s entries in every log, preserving order; logs that
// become empty are dropped. Unknown component raises.
LogSet project(const LogSet& logs, const std::string& component);

struct LogPart {
    std::string component;
    Log part;
};

// Split one log into maximal single-component runs, preserving order.
// Concatenating the parts reproduces the log. Empty log raises.
std::vector<LogPart> partition(const Log& log);

// Copy every log `factor` times under fresh unique ids. factor must be >= 1.
LogSet duplicate(const LogSet& logs, int factor);

// Mutation operators, exposed for direct testing.
Log swap_entries(const Log& log, std::size_t i, std::size_t j);
Log delete_entry(const Log& log, std::size_t i);
Log insert_entry(const Log& log, std::size_t pos, const LogEntry& entry);

// For each log, synthesize one presumed-infeasible variant by a uniformly
// chosen operator (swap / delete / insert-from-another-execution). A mutant is
// kept only if the mutated window (changed entries plus one neighbor on each
// side) does not occur contiguously in any log of `positives`. Each log is
// retried up to per_log_attempts times, then skipped with a warning on stderr;
// if every log is skipped the call raises.
LogSet mutate_negative(const LogSet& logs, const LogSet& positives, std::uint64_t seed,
                       int per_log_attempts = 100);
LogSet mutate_negative(const LogSet& logs, std::uint64_t seed, int per_log_attempts = 100);

}  // namespace prins
