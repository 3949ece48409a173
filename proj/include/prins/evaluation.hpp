// Accuracy and scalability harness: k-fold cross validation with synthesized
// negative logs, exact-rational accuracy metrics, the log-component diversity
// score, and timing runs over duplicated inputs.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prins/inference.hpp"
#include "prins/log.hpp"

namespace prins {

// Exact rational in lowest terms with a positive denominator.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational of(long long num, long long den);
    Rational operator+(const Rational& other) const;
    Rational operator/(long long divisor) const;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num * b.den == b.num * a.den;
    }
};

std::optional<Rational> metric_ratio(long long hits, long long total);
std::optional<Rational> balanced_accuracy(const std::optional<Rational>& recall,
                                          const std::optional<Rational>& specificity);

struct FoldTally {
    int fold = 0;
    long long tp = 0, fn = 0, tn = 0, fp = 0;
    int skipped_negatives = 0;
};

struct EvalReport {
    long long tp = 0, fn = 0, tn = 0, fp = 0;
    std::optional<Rational> recall, specificity, ba;
    std::vector<FoldTally> per_fold;
    int skipped_negatives = 0;
    std::map<std::string, double> wall_times;
};

enum class Strategy { prins, direct };

std::string strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

struct EvalConfig {
    int folds = 10;
    Strategy strategy = Strategy::prins;
    InferenceConfig infer;
    int u = 1;
    std::uint64_t seed = 0;
    int per_log_attempts = 100;
    int fold_workers = 1;
};

// Seed-driven partition into near-equal folds; each fold in turn is held out,
// a model is trained on the rest, held-out positives count toward TP/FN and
// negatives synthesized from them toward TN/FP. Folds may run concurrently
// when fold_workers allows; tallies are aggregated in fold order either way.
EvalReport kfold_evaluate(const LogSet& logs, const EvalConfig& cfg);

// (U - 1) / (N - 1) where U counts distinct per-log component sets.
Rational lds(const LogSet& logs);

struct ScaleRow {
    int factor = 1;
    std::string strategy;
    std::string stage;
    double seconds = 0.0;
    std::string status;  // ok | timeout | oom
};

// Duplicates the logs by each factor, runs each strategy end to end, and
// records per-stage wall times, averaged over `repetitions` runs. Exceeding
// the budget or running out of memory is recorded in the row, not raised.
std::vector<ScaleRow> scalability_run(const LogSet& logs, const std::vector<int>& factors,
                                      const std::vector<Strategy>& strategies, double timeout_seconds,
                                      const InferenceConfig& cfg, int u, int repetitions = 1);

std::string report_to_csv(const EvalReport& report);
std::string scale_to_csv(const std::vector<ScaleRow>& rows);

}  // namespace prins
