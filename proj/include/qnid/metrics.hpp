#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qnid {

// Binary confusion counts. Positive class = attack (label 1) throughout;
// the precision/recall asymmetry between classes is the quantity of interest.
struct ConfusionMatrix {
    std::uint64_t tp = 0; // attack predicted attack
    std::uint64_t fp = 0; // benign predicted attack
    std::uint64_t tn = 0; // benign predicted benign
    std::uint64_t fn = 0; // attack predicted benign

    std::uint64_t total() const { return tp + fp + tn + fn; }
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::uint64_t support = 0;
};

struct MetricsReport {
    double accuracy = 0.0;
    ClassMetrics benign;       // class 0
    ClassMetrics attack;       // class 1
    ClassMetrics macro_avg;    // unweighted mean, support = total
    ClassMetrics weighted_avg; // support-weighted mean, support = total
    ConfusionMatrix cm;
    // cells whose denominator vanished and were reported as 0,
    // e.g. "benign.precision"; keeps the degenerate case machine-detectable
    std::vector<std::string> zero_division_flags;
};

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred);

MetricsReport summarize(const ConfusionMatrix& cm);

// Classification-report style table: per-class rows, accuracy, macro avg,
// weighted avg, support column. decimals is 2 by default, 4 by flag.
std::string render_report_text(const MetricsReport& r, int decimals = 2);

// Flat key=value document at full precision; parse_report_kv inverts it.
std::string render_report_kv(const MetricsReport& r);
MetricsReport parse_report_kv(const std::string& doc);

// 2x2 CSV of raw counts (rows = true class, columns = predicted class).
std::string render_confusion_csv(const ConfusionMatrix& cm);

} // namespace qnid
