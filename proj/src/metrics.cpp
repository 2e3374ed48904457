#include "qnid/metrics.hpp"

#include "qnid/errors.hpp"
#include "qnid/util.hpp"

#include <cstdio>
#include <map>
#include <stdexcept>

namespace qnid {

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred) {
    if (y_true.empty()) throw std::invalid_argument("confusion: empty label sequences");
    if (y_true.size() != y_pred.size()) {
        throw std::invalid_argument("confusion: length mismatch (" +
                                    std::to_string(y_true.size()) + " vs " +
                                    std::to_string(y_pred.size()) + ")");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        int t = y_true[i];
        int p = y_pred[i];
        if ((t != 0 && t != 1) || (p != 0 && p != 1)) {
            throw std::invalid_argument("confusion: labels must be 0 or 1 (index " +
                                        std::to_string(i) + ")");
        }
        if (t == 1) {
            p == 1 ? ++cm.tp : ++cm.fn;
        } else {
            p == 1 ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den, const char* cell,
             std::vector<std::string>& flags) {
    if (den == 0) {
        flags.emplace_back(cell);
        return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

double f1_of(double p, double r, const char* cell, std::vector<std::string>& flags) {
    if (p + r == 0.0) {
        flags.emplace_back(cell);
        return 0.0;
    }
    return 2.0 * p * r / (p + r);
}

} // namespace

MetricsReport summarize(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw std::invalid_argument("summarize: empty confusion matrix");

    MetricsReport r;
    r.cm = cm;
    const double total = static_cast<double>(cm.total());

    r.attack.precision = ratio(cm.tp, cm.tp + cm.fp, "attack.precision", r.zero_division_flags);
    r.attack.recall = ratio(cm.tp, cm.tp + cm.fn, "attack.recall", r.zero_division_flags);
    r.attack.f1 = f1_of(r.attack.precision, r.attack.recall, "attack.f1", r.zero_division_flags);
    r.attack.support = cm.tp + cm.fn;

    // benign metrics are the mirror image: its "positives" are predictions of 0
    r.benign.precision = ratio(cm.tn, cm.tn + cm.fn, "benign.precision", r.zero_division_flags);
    r.benign.recall = ratio(cm.tn, cm.tn + cm.fp, "benign.recall", r.zero_division_flags);
    r.benign.f1 = f1_of(r.benign.precision, r.benign.recall, "benign.f1", r.zero_division_flags);
    r.benign.support = cm.tn + cm.fp;

    r.accuracy = static_cast<double>(cm.tp + cm.tn) / total;

    r.macro_avg.precision = 0.5 * (r.benign.precision + r.attack.precision);
    r.macro_avg.recall = 0.5 * (r.benign.recall + r.attack.recall);
    r.macro_avg.f1 = 0.5 * (r.benign.f1 + r.attack.f1);
    r.macro_avg.support = cm.total();

    const double wb = static_cast<double>(r.benign.support) / total;
    const double wa = static_cast<double>(r.attack.support) / total;
    r.weighted_avg.precision = wb * r.benign.precision + wa * r.attack.precision;
    r.weighted_avg.recall = wb * r.benign.recall + wa * r.attack.recall;
    r.weighted_avg.f1 = wb * r.benign.f1 + wa * r.attack.f1;
    r.weighted_avg.support = cm.total();

    return r;
}

namespace {

std::string fixed(double v, int decimals) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return std::string(buf);
}

void table_row(std::string& out, const std::string& name, const std::string& a,
               const std::string& b, const std::string& c, const std::string& d) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%12s %10s %10s %10s %10s\n", name.c_str(), a.c_str(),
                  b.c_str(), c.c_str(), d.c_str());
    out += buf;
}

} // namespace

std::string render_report_text(const MetricsReport& r, int decimals) {
    std::string out;
    table_row(out, "", "precision", "recall", "f1-score", "support");
    out += "\n";
    table_row(out, "benign", fixed(r.benign.precision, decimals), fixed(r.benign.recall, decimals),
              fixed(r.benign.f1, decimals), std::to_string(r.benign.support));
    table_row(out, "attack", fixed(r.attack.precision, decimals), fixed(r.attack.recall, decimals),
              fixed(r.attack.f1, decimals), std::to_string(r.attack.support));
    out += "\n";
    table_row(out, "accuracy", "", "", fixed(r.accuracy, decimals),
              std::to_string(r.cm.total()));
    table_row(out, "macro avg", fixed(r.macro_avg.precision, decimals),
              fixed(r.macro_avg.recall, decimals), fixed(r.macro_avg.f1, decimals),
              std::to_string(r.macro_avg.support));
    table_row(out, "weighted avg", fixed(r.weighted_avg.precision, decimals),
              fixed(r.weighted_avg.recall, decimals), fixed(r.weighted_avg.f1, decimals),
              std::to_string(r.weighted_avg.support));
    return out;
}

namespace {

void kv_class(std::string& out, const char* name, const ClassMetrics& m) {
    out += std::string(name) + ".precision=" + format_double(m.precision) + "\n";
    out += std::string(name) + ".recall=" + format_double(m.recall) + "\n";
    out += std::string(name) + ".f1=" + format_double(m.f1) + "\n";
    out += std::string(name) + ".support=" + std::to_string(m.support) + "\n";
}

} // namespace

std::string render_report_kv(const MetricsReport& r) {
    std::string out;
    out += "accuracy=" + format_double(r.accuracy) + "\n";
    kv_class(out, "benign", r.benign);
    kv_class(out, "attack", r.attack);
    kv_class(out, "macro_avg", r.macro_avg);
    kv_class(out, "weighted_avg", r.weighted_avg);
    out += "cm.tp=" + std::to_string(r.cm.tp) + "\n";
    out += "cm.fp=" + std::to_string(r.cm.fp) + "\n";
    out += "cm.tn=" + std::to_string(r.cm.tn) + "\n";
    out += "cm.fn=" + std::to_string(r.cm.fn) + "\n";
    std::string flags;
    for (const auto& f : r.zero_division_flags) {
        if (!flags.empty()) flags += ",";
        flags += f;
    }
    out += "zero_division_flags=" + flags + "\n";
    return out;
}

MetricsReport parse_report_kv(const std::string& doc) {
    std::map<std::string, std::string> kv;
    for (const auto& raw : split(doc, '\n')) {
        std::string_view line = trim(raw);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw data_error("metrics document: malformed line '" + std::string(line) + "'");
        }
        kv[std::string(line.substr(0, eq))] = std::string(line.substr(eq + 1));
    }
    auto need = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw data_error("metrics document: missing key '" + key + "'");
        return it->second;
    };
    auto read_class = [&](const std::string& name) {
        ClassMetrics m;
        m.precision = parse_double(need(name + ".precision"), name);
        m.recall = parse_double(need(name + ".recall"), name);
        m.f1 = parse_double(need(name + ".f1"), name);
        m.support = parse_u64(need(name + ".support"), name);
        return m;
    };

    MetricsReport r;
    r.accuracy = parse_double(need("accuracy"), "accuracy");
    r.benign = read_class("benign");
    r.attack = read_class("attack");
    r.macro_avg = read_class("macro_avg");
    r.weighted_avg = read_class("weighted_avg");
    r.cm.tp = parse_u64(need("cm.tp"), "cm.tp");
    r.cm.fp = parse_u64(need("cm.fp"), "cm.fp");
    r.cm.tn = parse_u64(need("cm.tn"), "cm.tn");
    r.cm.fn = parse_u64(need("cm.fn"), "cm.fn");
    const std::string& flags = need("zero_division_flags");
    if (!flags.empty()) {
        for (auto& f : split(flags, ',')) r.zero_division_flags.push_back(f);
    }
    return r;
}

std::string render_confusion_csv(const ConfusionMatrix& cm) {
    std::string out = "true\\pred,benign,attack\n";
    out += "benign," + std::to_string(cm.tn) + "," + std::to_string(cm.fp) + "\n";
    out += "attack," + std::to_string(cm.fn) + "," + std::to_string(cm.tp) + "\n";
    return out;
}

} // namespace qnid
