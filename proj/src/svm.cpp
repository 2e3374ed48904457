#include "qnid/svm.hpp"

#include "qnid/errors.hpp"
#include "qnid/rng.hpp"
#include "qnid/util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace qnid {

namespace {

constexpr double kAlphaChangeMin = 1e-8; // pair updates smaller than this are noise
constexpr double kSvThreshold = 1e-10;   // alphas below this are not support vectors
constexpr int kSweepBudgetFactor = 100;  // hard cap = max_passes * this

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// Two-variable coordinate ascent state. The linear kernel keeps the primal
// weight vector so decision values are O(d); the rbf kernel keeps a decision
// cache updated incrementally after every pair change.
struct Solver {
    const std::vector<std::vector<double>>& X;
    std::span<const double> y;
    double C;
    ClassWeights weights;
    KernelSpec kernel;
    bool linear;

    std::vector<double> alphas;
    double b = 0.0;
    std::vector<double> w;       // linear only
    std::vector<double> f_cache; // rbf only, holds f(x_k) including b

    Solver(const std::vector<std::vector<double>>& X_, std::span<const double> y_, double C_,
           const KernelSpec& k_, const ClassWeights& weights_)
        : X(X_), y(y_), C(C_), weights(weights_), kernel(k_),
          linear(k_.kind == KernelSpec::Kind::linear), alphas(X_.size(), 0.0) {
        if (linear) {
            w.assign(X.front().size(), 0.0);
        } else {
            f_cache.assign(X.size(), 0.0);
        }
    }

    // per-class box bound
    double cap(std::size_t i) const {
        return C * (y[i] > 0.0 ? weights.attack : weights.benign);
    }

    double k_eval(std::size_t i, std::size_t j) const { return kernel_eval(kernel, X[i], X[j]); }

    double f(std::size_t i) const { return linear ? dot(w, X[i]) + b : f_cache[i]; }

    void apply_update(std::size_t i, std::size_t j, double dai, double daj, double db) {
        if (linear) {
            for (std::size_t t = 0; t < w.size(); ++t) {
                w[t] += y[i] * dai * X[i][t] + y[j] * daj * X[j][t];
            }
        } else {
            for (std::size_t k = 0; k < X.size(); ++k) {
                f_cache[k] += y[i] * dai * k_eval(i, k) + y[j] * daj * k_eval(j, k) + db;
            }
        }
        b += db;
    }

    // one pairwise subproblem; returns true if alphas moved
    bool optimize_pair(std::size_t i, std::size_t j) {
        const double ai = alphas[i];
        const double aj = alphas[j];
        const double ci = cap(i);
        const double cj = cap(j);
        const double ei = f(i) - y[i];
        const double ej = f(j) - y[j];

        double lo, hi;
        if (y[i] != y[j]) {
            lo = std::max(0.0, aj - ai);
            hi = std::min(cj, ci + aj - ai);
        } else {
            lo = std::max(0.0, ai + aj - ci);
            hi = std::min(cj, ai + aj);
        }
        if (lo >= hi) return false;

        const double kij = k_eval(i, j);
        const double eta = 2.0 * kij - k_eval(i, i) - k_eval(j, j);
        if (eta >= 0.0) return false;

        double aj_new = std::clamp(aj - y[j] * (ei - ej) / eta, lo, hi);
        if (std::abs(aj_new - aj) < kAlphaChangeMin) return false;
        const double ai_new = ai + y[i] * y[j] * (aj - aj_new);

        const double dai = ai_new - ai;
        const double daj = aj_new - aj;
        const double b1 = b - ei - y[i] * dai * k_eval(i, i) - y[j] * daj * kij;
        const double b2 = b - ej - y[i] * dai * kij - y[j] * daj * k_eval(j, j);
        double b_new;
        if (ai_new > 0.0 && ai_new < ci) b_new = b1;
        else if (aj_new > 0.0 && aj_new < cj) b_new = b2;
        else b_new = 0.5 * (b1 + b2);

        alphas[i] = ai_new;
        alphas[j] = aj_new;
        apply_update(i, j, dai, daj, b_new - b);
        return true;
    }

    // decision value without bias, recomputed exactly from the alphas
    double margin_raw(std::size_t k) const {
        double acc = 0.0;
        for (std::size_t j = 0; j < X.size(); ++j) {
            if (alphas[j] > 0.0) acc += alphas[j] * y[j] * k_eval(j, k);
        }
        return acc;
    }

    // Bias-independent optimality check. Every point implies a bound on the
    // bias (an equality for free alphas); the solution is KKT-feasible at
    // tolerance tol iff the highest lower bound exceeds the lowest upper
    // bound by at most 2*tol. The two extreme points form the maximal
    // violating pair, the most productive next working set.
    struct GapReport {
        double gap = 0.0;
        std::size_t lower = 0; // argmax of the lower bounds
        std::size_t upper = 0; // argmin of the upper bounds
    };
    GapReport optimality_gap() const {
        double b_lo = -std::numeric_limits<double>::infinity();
        double b_hi = std::numeric_limits<double>::infinity();
        GapReport report;
        for (std::size_t i = 0; i < X.size(); ++i) {
            const double implied = y[i] - (f(i) - b); // y_i minus the bias-free margin
            const bool at_zero = alphas[i] <= kSvThreshold;
            const bool at_cap = alphas[i] >= cap(i) - kSvThreshold;
            const bool bounds_below = (at_zero && y[i] > 0.0) || (at_cap && y[i] < 0.0) ||
                                      (!at_zero && !at_cap);
            const bool bounds_above = (at_zero && y[i] < 0.0) || (at_cap && y[i] > 0.0) ||
                                      (!at_zero && !at_cap);
            if (bounds_below && implied > b_lo) {
                b_lo = implied;
                report.lower = i;
            }
            if (bounds_above && implied < b_hi) {
                b_hi = implied;
                report.upper = i;
            }
        }
        report.gap = b_lo - b_hi; // -inf when either side is unconstrained
        return report;
    }

    // Final bias: average implied value over free support vectors; if none,
    // midpoint of the interval the box-bound KKT conditions allow.
    double final_bias() const {
        double sum = 0.0;
        std::size_t free_svs = 0;
        for (std::size_t i = 0; i < X.size(); ++i) {
            if (alphas[i] > kSvThreshold && alphas[i] < cap(i) - kSvThreshold) {
                sum += y[i] - margin_raw(i);
                ++free_svs;
            }
        }
        if (free_svs > 0) return sum / static_cast<double>(free_svs);

        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < X.size(); ++i) {
            const double g = margin_raw(i);
            const bool at_zero = alphas[i] <= kSvThreshold;
            if ((at_zero && y[i] > 0.0) || (!at_zero && y[i] < 0.0)) {
                lo = std::max(lo, y[i] - g); // y f(x) constraint gives a lower bound on b
            } else {
                hi = std::min(hi, y[i] - g);
            }
        }
        if (!std::isfinite(lo)) return std::isfinite(hi) ? hi : b;
        if (!std::isfinite(hi)) return lo;
        return 0.5 * (lo + hi);
    }
};

void check_labels_pm1(std::span<const double> y) {
    bool pos = false, neg = false;
    for (double v : y) {
        if (v == 1.0) pos = true;
        else if (v == -1.0) neg = true;
        else throw model_error("smo_solve: labels must be -1 or +1");
    }
    if (!pos || !neg) throw model_error("smo_solve: both classes must be present");
}

} // namespace

SmoSolution smo_solve(const std::vector<std::vector<double>>& X, std::span<const double> y,
                      double C, const KernelSpec& kernel, double tol, int max_passes,
                      std::uint64_t seed, const ClassWeights& weights) {
    if (X.empty() || X.size() != y.size()) {
        throw model_error("smo_solve: sample/label count mismatch");
    }
    if (!(C > 0.0)) throw model_error("smo_solve: C must be positive");
    if (!(weights.benign > 0.0) || !(weights.attack > 0.0)) {
        throw model_error("smo_solve: class weights must be positive");
    }
    if (max_passes < 1) throw model_error("smo_solve: max_passes must be >= 1");
    check_labels_pm1(y);

    const std::size_t n = X.size();
    Solver s(X, y, C, kernel, weights);
    Rng rng(seed);

    const std::size_t sweep_budget = static_cast<std::size_t>(max_passes) * kSweepBudgetFactor;
    std::size_t sweeps = 0;
    int stuck = 0;
    bool converged = false;
    while (sweeps < sweep_budget) {
        ++sweeps;
        std::size_t changed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double margin_err = y[i] * (s.f(i) - y[i]);
            const bool violates = (margin_err < -tol && s.alphas[i] < s.cap(i)) ||
                                  (margin_err > tol && s.alphas[i] > 0.0);
            if (!violates) continue;
            std::size_t j = static_cast<std::size_t>(rng.next_below(n - 1));
            if (j >= i) ++j;
            if (s.optimize_pair(i, j)) ++changed;
        }
        if (changed > 0) {
            stuck = 0;
            continue;
        }
        // Quiet sweep: decide on the bias-independent gap. The sweep screen
        // above uses the running bias, which can mask residual violations.
        const Solver::GapReport gap = s.optimality_gap();
        if (gap.gap <= 2.0 * tol) {
            converged = true;
            break;
        }
        // work directly on the maximal violating pair
        if (s.optimize_pair(gap.lower, gap.upper)) {
            stuck = 0;
        } else if (++stuck >= max_passes) {
            break; // numerically wedged; return the best iterate with a warning
        }
    }

    SmoSolution out;
    out.alphas = std::move(s.alphas);
    out.converged = converged;
    out.sweeps = sweeps;
    // exact bias from the final alphas, independent of the incremental b
    Solver audit(X, y, C, kernel, weights);
    audit.alphas = out.alphas;
    out.bias = audit.final_bias();
    return out;
}

SvmModel train_svm_smo(const std::vector<std::vector<double>>& X, std::span<const int> y,
                       double C, const KernelSpec& kernel, double tol, int max_passes,
                       std::uint64_t seed, const ClassWeights& weights) {
    if (X.size() != y.size() || X.size() < 2) {
        throw model_error("train_svm_smo: need at least 2 samples with matching labels");
    }
    std::vector<double> yv(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] != 0 && y[i] != 1) throw model_error("train_svm_smo: labels must be 0 or 1");
        yv[i] = y[i] == 1 ? 1.0 : -1.0;
    }

    SmoSolution sol = smo_solve(X, yv, C, kernel, tol, max_passes, seed, weights);

    SvmModel m;
    m.kernel = kernel;
    m.C = C;
    m.class_weights = weights;
    m.tol = tol;
    m.max_passes = max_passes;
    m.seed = seed;
    m.converged = sol.converged;
    m.bias = sol.bias;
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (sol.alphas[i] > kSvThreshold) {
            m.support_vectors.push_back(X[i]);
            m.dual_coef.push_back(sol.alphas[i] * yv[i]);
        }
    }
    return m;
}

double svm_decision(const SvmModel& m, std::span<const double> x) {
    if (!m.support_vectors.empty() && x.size() != m.support_vectors.front().size()) {
        throw std::invalid_argument("svm_decision: dimension mismatch (" +
                                    std::to_string(x.size()) + " vs " +
                                    std::to_string(m.support_vectors.front().size()) + ")");
    }
    double acc = m.bias;
    for (std::size_t i = 0; i < m.support_vectors.size(); ++i) {
        acc += m.dual_coef[i] * kernel_eval(m.kernel, m.support_vectors[i], x);
    }
    return acc;
}

int predict_svm(const SvmModel& m, std::span<const double> x) {
    return svm_decision(m, x) >= 0.0 ? 1 : 0;
}

KktReport kkt_audit(const std::vector<std::vector<double>>& X, std::span<const double> y,
                    std::span<const double> alphas, double bias, double C,
                    const KernelSpec& kernel, double tol, const ClassWeights& weights) {
    if (X.size() != y.size() || X.size() != alphas.size()) {
        throw std::invalid_argument("kkt_audit: size mismatch");
    }
    KktReport report;
    for (std::size_t i = 0; i < X.size(); ++i) {
        double f = bias;
        for (std::size_t j = 0; j < X.size(); ++j) {
            if (alphas[j] > 0.0) f += alphas[j] * y[j] * kernel_eval(kernel, X[j], X[i]);
        }
        const double yf = y[i] * f;
        const double cap = C * (y[i] > 0.0 ? weights.attack : weights.benign);
        double violation = 0.0;
        if (alphas[i] <= kSvThreshold) {
            violation = std::max(0.0, (1.0 - tol) - yf);
        } else if (alphas[i] >= cap - kSvThreshold) {
            violation = std::max(0.0, yf - (1.0 + tol));
        } else {
            violation = std::max(0.0, std::abs(yf - 1.0) - tol);
        }
        if (violation > 0.0) ++report.violations;
        report.max_violation = std::max(report.max_violation, violation);
    }
    return report;
}

void save_svm(const SvmModel& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw data_error("cannot write model file: " + path);
    f << "model=svm\n";
    f << "kernel=" << m.kernel.name() << "\n";
    f << "gamma=" << format_double(m.kernel.gamma) << "\n";
    f << "C=" << format_double(m.C) << "\n";
    f << "weight_benign=" << format_double(m.class_weights.benign) << "\n";
    f << "weight_attack=" << format_double(m.class_weights.attack) << "\n";
    f << "tol=" << format_double(m.tol) << "\n";
    f << "max_passes=" << m.max_passes << "\n";
    f << "seed=" << m.seed << "\n";
    f << "converged=" << (m.converged ? 1 : 0) << "\n";
    f << "bias=" << format_double(m.bias) << "\n";
    f << "n_sv=" << m.support_vectors.size() << "\n";
    f << "dim=" << (m.support_vectors.empty() ? 0 : m.support_vectors.front().size()) << "\n";
    for (std::size_t i = 0; i < m.support_vectors.size(); ++i) {
        f << format_double(m.dual_coef[i]);
        for (double v : m.support_vectors[i]) f << "," << format_double(v);
        f << "\n";
    }
}

SvmModel load_svm(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("cannot open model file: " + path);
    SvmModel m;
    std::string kernel_name;
    double gamma = 0.0;
    std::size_t n_sv = 0, dim = 0;
    std::string line;
    for (int i = 0; i < 13; ++i) {
        if (!std::getline(f, line)) throw data_error(path + ": truncated model header");
        std::string_view v = trim(line);
        std::size_t eq = v.find('=');
        if (eq == std::string_view::npos) {
            throw data_error(path + ": malformed header line '" + line + "'");
        }
        std::string_view key = v.substr(0, eq);
        std::string_view val = v.substr(eq + 1);
        if (key == "model") {
            if (val != "svm") throw data_error(path + ": not an svm model file");
        } else if (key == "kernel") kernel_name = std::string(val);
        else if (key == "gamma") gamma = parse_double(val, path);
        else if (key == "C") m.C = parse_double(val, path);
        else if (key == "weight_benign") m.class_weights.benign = parse_double(val, path);
        else if (key == "weight_attack") m.class_weights.attack = parse_double(val, path);
        else if (key == "tol") m.tol = parse_double(val, path);
        else if (key == "max_passes") m.max_passes = static_cast<int>(parse_u64(val, path));
        else if (key == "seed") m.seed = parse_u64(val, path);
        else if (key == "converged") m.converged = parse_u64(val, path) != 0;
        else if (key == "bias") m.bias = parse_double(val, path);
        else if (key == "n_sv") n_sv = parse_u64(val, path);
        else if (key == "dim") dim = parse_u64(val, path);
        else throw data_error(path + ": unknown header key '" + std::string(key) + "'");
    }
    if (kernel_name == "linear") m.kernel = KernelSpec::linear();
    else if (kernel_name == "rbf") m.kernel = KernelSpec::rbf(gamma);
    else throw data_error(path + ": unknown kernel '" + kernel_name + "'");

    while (std::getline(f, line)) {
        std::string_view v = trim(line);
        if (v.empty()) continue;
        auto cells = split(v, ',');
        if (cells.size() != dim + 1) {
            throw data_error(path + ": support vector row has " + std::to_string(cells.size()) +
                             " cells, expected " + std::to_string(dim + 1));
        }
        m.dual_coef.push_back(parse_double(cells[0], path));
        std::vector<double> sv(dim);
        for (std::size_t j = 0; j < dim; ++j) sv[j] = parse_double(cells[j + 1], path);
        m.support_vectors.push_back(std::move(sv));
    }
    if (m.support_vectors.size() != n_sv) {
        throw data_error(path + ": expected " + std::to_string(n_sv) +
                         " support vectors, found " + std::to_string(m.support_vectors.size()));
    }
    return m;
}

} // namespace qnid
