#pragma once

#include "qnid/kernel.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qnid {

// Cost-sensitive per-class multipliers on the box constraint: class y gets
// cap C * weight(y). {1, 1} is the plain SVM.
struct ClassWeights {
    double benign = 1.0; // class 0 / y = -1
    double attack = 1.0; // class 1 / y = +1
};

struct SvmModel {
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> dual_coef; // alpha_i * y_i per support vector, y in {-1,+1}
    double bias = 0.0;
    KernelSpec kernel;
    double C = 1.0;
    ClassWeights class_weights;
    // training metadata
    double tol = 1e-3;
    int max_passes = 10;
    std::uint64_t seed = 0;
    bool converged = true; // false = iteration budget hit, best iterate returned
};

// Raw dual solution over the full training set, before support-vector pruning.
struct SmoSolution {
    std::vector<double> alphas; // n values in [0, C]
    double bias = 0.0;
    bool converged = true;
    std::size_t sweeps = 0;
};

// Simplified SMO: sweep all points for KKT violations at tolerance tol, pair
// each violator with a seeded-random second index, solve the two-variable
// subproblem in closed form. When a sweep makes no progress, convergence is
// decided by the bias-independent optimality gap (maximal violating pair),
// and that pair is optimized directly if the gap is still open. The hard
// budget is max_passes * 100 sweeps, and max_passes consecutive wedged
// directed attempts also stop the solver; either path returns the best
// iterate with converged = false. y holds {-1,+1}.
SmoSolution smo_solve(const std::vector<std::vector<double>>& X, std::span<const double> y,
                      double C, const KernelSpec& kernel, double tol, int max_passes,
                      std::uint64_t seed, const ClassWeights& weights = {});

// Trains on {0,1} labels and prunes to support vectors. The final bias is the
// average implied value over free support vectors (0 < alpha < cap); when
// none are free it falls back to the midpoint of the KKT-feasible interval.
// Throws qnid::model_error for single-class input.
SvmModel train_svm_smo(const std::vector<std::vector<double>>& X, std::span<const int> y,
                       double C, const KernelSpec& kernel, double tol = 1e-3,
                       int max_passes = 10, std::uint64_t seed = 0,
                       const ClassWeights& weights = {});

double svm_decision(const SvmModel& m, std::span<const double> x);

// label 1 iff decision value >= 0
int predict_svm(const SvmModel& m, std::span<const double> x);

// Three-case KKT audit of a dual solution on its training set (cap = the
// per-class box bound, C for unweighted training):
//   alpha = 0        ->  y f(x) >= 1 - tol
//   alpha = cap      ->  y f(x) <= 1 + tol
//   0 < alpha < cap  ->  |y f(x) - 1| <= tol
// max_violation is the largest slack error over all points.
struct KktReport {
    double max_violation = 0.0;
    std::size_t violations = 0;
};
KktReport kkt_audit(const std::vector<std::vector<double>>& X, std::span<const double> y,
                    std::span<const double> alphas, double bias, double C,
                    const KernelSpec& kernel, double tol, const ClassWeights& weights = {});

void save_svm(const SvmModel& m, const std::string& path);
SvmModel load_svm(const std::string& path);

} // namespace qnid
