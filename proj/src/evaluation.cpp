#include "prins/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <new>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "prins/pipeline.hpp"

namespace prins {

Rational Rational::of(long long num, long long den) {
    if (den == 0) throw std::runtime_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

Rational Rational::operator+(const Rational& other) const {
    return Rational::of(num * other.den + other.num * den, den * other.den);
}

Rational Rational::operator/(long long divisor) const { return Rational::of(num, den * divisor); }

std::optional<Rational> metric_ratio(long long hits, long long total) {
    if (total <= 0) return std::nullopt;
    return Rational::of(hits, total);
}

std::optional<Rational> balanced_accuracy(const std::optional<Rational>& recall,
                                          const std::optional<Rational>& specificity) {
    if (!recall || !specificity) return std::nullopt;
    return (*recall + *specificity) / 2;
}

std::string strategy_name(Strategy s) { return s == Strategy::prins ? "prins" : "direct"; }

Strategy strategy_from_name(const std::string& name) {
    if (name == "prins") return Strategy::prins;
    if (name == "direct") return Strategy::direct;
    throw std::runtime_error("unknown strategy: " + name);
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Gfsm train_model(const LogSet& train, const EvalConfig& cfg) {
    if (cfg.strategy == Strategy::prins) return run_prins(train, cfg.infer, cfg.u).model;
    return run_direct(train, cfg.infer).model;
}

struct FoldOutcome {
    FoldTally tally;
    double train_seconds = 0.0;
    double classify_seconds = 0.0;
};

FoldOutcome evaluate_fold(const LogSet& all_logs, const std::vector<const Log*>& test,
                          const LogSet& train, int fold, const EvalConfig& cfg) {
    FoldOutcome out;
    FoldTally& tally = out.tally;
    tally.fold = fold;
    auto t0 = std::chrono::steady_clock::now();
    Gfsm model = train_model(train, cfg);
    auto t1 = std::chrono::steady_clock::now();
    out.train_seconds = std::chrono::duration<double>(t1 - t0).count();

    for (const Log* log : test) {
        if (model.accepts(*log)) ++tally.tp;
        else ++tally.fn;
    }

    LogSet held_out;
    for (const Log* log : test) held_out.add(*log);
    LogSet negatives;
    bool exhausted = false;
    try {
        negatives = mutate_negative(held_out, all_logs, mix_seed(cfg.seed, static_cast<std::uint64_t>(fold)),
                                    cfg.per_log_attempts);
    } catch (const std::runtime_error&) {
        tally.skipped_negatives = static_cast<int>(test.size());
        exhausted = true;
    }
    if (!exhausted) {
        tally.skipped_negatives = static_cast<int>(test.size() - negatives.size());
        for (const auto& neg : negatives.logs()) {
            if (model.accepts(neg)) ++tally.fp;
            else ++tally.tn;
        }
    }
    out.classify_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    return out;
}

}  // namespace

EvalReport kfold_evaluate(const LogSet& logs, const EvalConfig& cfg) {
    const int k = cfg.folds;
    if (k < 2) throw std::runtime_error("need at least 2 folds");
    if (logs.size() < static_cast<std::size_t>(k))
        throw std::runtime_error("fewer logs (" + std::to_string(logs.size()) + ") than folds (" +
                                 std::to_string(k) + ")");

    std::vector<std::size_t> order(logs.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(cfg.seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::size_t lo = f * logs.size() / static_cast<std::size_t>(k);
        std::size_t hi = (f + 1) * logs.size() / static_cast<std::size_t>(k);
        folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(lo),
                        order.begin() + static_cast<std::ptrdiff_t>(hi));
    }

    auto start = std::chrono::steady_clock::now();
    std::vector<FoldOutcome> outcomes(folds.size());
    std::vector<std::exception_ptr> errors(folds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t f = next.fetch_add(1);
            if (f >= folds.size()) break;
            try {
                std::vector<const Log*> test;
                LogSet train;
                std::vector<char> held(logs.size(), 0);
                for (std::size_t idx : folds[f]) held[idx] = 1;
                for (std::size_t i = 0; i < logs.size(); ++i) {
                    if (held[i]) test.push_back(&logs.logs()[i]);
                    else train.add(logs.logs()[i]);
                }
                outcomes[f] = evaluate_fold(logs, test, train, static_cast<int>(f), cfg);
            } catch (...) {
                errors[f] = std::current_exception();
            }
        }
    };
    std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, cfg.fold_workers)),
                                                  folds.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);

    EvalReport report;
    for (const auto& outcome : outcomes) {
        const FoldTally& t = outcome.tally;
        report.per_fold.push_back(t);
        report.tp += t.tp;
        report.fn += t.fn;
        report.tn += t.tn;
        report.fp += t.fp;
        report.skipped_negatives += t.skipped_negatives;
        report.wall_times["train"] += outcome.train_seconds;
        report.wall_times["classify"] += outcome.classify_seconds;
    }
    report.recall = metric_ratio(report.tp, report.tp + report.fn);
    report.specificity = metric_ratio(report.tn, report.tn + report.fp);
    report.ba = balanced_accuracy(report.recall, report.specificity);
    report.wall_times["evaluation"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

Rational lds(const LogSet& logs) {
    if (logs.size() < 2) throw std::runtime_error("diversity score needs at least 2 logs");
    std::set<std::set<std::string>> component_sets;
    for (const auto& log : logs.logs()) {
        std::set<std::string> components;
        for (const auto& e : log.entries) components.insert(e.component);
        component_sets.insert(std::move(components));
    }
    return Rational::of(static_cast<long long>(component_sets.size()) - 1,
                        static_cast<long long>(logs.size()) - 1);
}

std::vector<ScaleRow> scalability_run(const LogSet& logs, const std::vector<int>& factors,
                                      const std::vector<Strategy>& strategies, double timeout_seconds,
                                      const InferenceConfig& cfg, int u, int repetitions) {
    if (factors.empty()) throw std::runtime_error("need at least one duplication factor");
    for (int f : factors)
        if (f < 1) throw std::runtime_error("duplication factors must be >= 1");
    if (repetitions < 1) throw std::runtime_error("repetitions must be >= 1");

    std::vector<ScaleRow> rows;
    for (Strategy strategy : strategies) {
        bool gave_up = false;
        for (int factor : factors) {
            const std::string name = strategy_name(strategy);
            if (gave_up) {
                rows.push_back(ScaleRow{factor, name, "total", 0.0, "timeout"});
                continue;
            }
            try {
                LogSet scaled = duplicate(logs, factor);
                std::map<std::string, double> stage_sum;
                double total_sum = 0.0;
                int done = 0;
                std::string status = "ok";
                for (int rep = 0; rep < repetitions; ++rep) {
                    auto start = std::chrono::steady_clock::now();
                    PipelineResult result = strategy == Strategy::prins ? run_prins(scaled, cfg, u)
                                                                        : run_direct(scaled, cfg);
                    double total =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                    total_sum += total;
                    for (const auto& [stage, seconds] : result.stage_seconds)
                        stage_sum[stage] += seconds;
                    ++done;
                    if (timeout_seconds > 0 && total > timeout_seconds) {
                        status = "timeout";
                        gave_up = true;  // larger factors would only be slower
                        break;
                    }
                }
                for (const auto& [stage, seconds] : stage_sum)
                    rows.push_back(ScaleRow{factor, name, stage, seconds / done, status});
                rows.push_back(ScaleRow{factor, name, "total", total_sum / done, status});
            } catch (const std::bad_alloc&) {
                rows.push_back(ScaleRow{factor, name, "total", 0.0, "oom"});
                gave_up = true;
            }
        }
    }
    return rows;
}

namespace {

std::string format_seconds(double seconds) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", seconds);
    return buf;
}

std::string format_metric(const std::optional<Rational>& r) {
    if (!r) return "";
    return format_seconds(r->value());
}

}  // namespace

std::string report_to_csv(const EvalReport& report) {
    std::ostringstream out;
    out << "fold,tp,fn,tn,fp,recall,specificity,ba\n";
    for (const auto& t : report.per_fold) {
        auto recall = metric_ratio(t.tp, t.tp + t.fn);
        auto specificity = metric_ratio(t.tn, t.tn + t.fp);
        out << t.fold << ',' << t.tp << ',' << t.fn << ',' << t.tn << ',' << t.fp << ','
            << format_metric(recall) << ',' << format_metric(specificity) << ','
            << format_metric(balanced_accuracy(recall, specificity)) << '\n';
    }
    out << "all," << report.tp << ',' << report.fn << ',' << report.tn << ',' << report.fp << ','
        << format_metric(report.recall) << ',' << format_metric(report.specificity) << ','
        << format_metric(report.ba) << '\n';
    return out.str();
}

std::string scale_to_csv(const std::vector<ScaleRow>& rows) {
    std::ostringstream out;
    out << "factor,strategy,stage,seconds,status\n";
    for (const auto& r : rows)
        out << r.factor << ',' << r.strategy << ',' << r.stage << ',' << format_seconds(r.seconds)
            << ',' << r.status << '\n';
    return out.str();
}

}  // namespace prins
