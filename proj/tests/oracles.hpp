#pragma once

// Test-only reference implementations, kept independent of the library's
// solver paths: a projected-gradient ascent on the SVM dual, the dual
// objective it optimizes, and a Jacobi eigensolver for kernel-matrix
// positive-semidefiniteness checks.

#include "qnid/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracles {

inline std::vector<std::vector<double>> kernel_matrix(const std::vector<std::vector<double>>& X,
                                                      const qnid::KernelSpec& k) {
    const std::size_t n = X.size();
    std::vector<std::vector<double>> K(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            K[i][j] = K[j][i] = qnid::kernel_eval(k, X[i], X[j]);
        }
    }
    return K;
}

// W(alpha) = sum alpha_i - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij
inline double dual_objective(const std::vector<double>& alpha, const std::vector<double>& y,
                             const std::vector<std::vector<double>>& K) {
    const std::size_t n = alpha.size();
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) obj += alpha[i];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            obj -= 0.5 * alpha[i] * alpha[j] * y[i] * y[j] * K[i][j];
        }
    }
    return obj;
}

// Euclidean projection of v onto {a : 0 <= a_i <= C, y.a = 0}. The shifted
// clamp a_i = clip(v_i - lambda y_i, 0, C) makes g(lambda) = y.a monotone
// non-increasing, so bisection on lambda is exact.
inline std::vector<double> project_dual(const std::vector<double>& v,
                                        const std::vector<double>& y, double C) {
    const std::size_t n = v.size();
    auto clipped = [&](double lambda) {
        std::vector<double> a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = std::clamp(v[i] - lambda * y[i], 0.0, C);
        return a;
    };
    auto g = [&](double lambda) {
        double acc = 0.0;
        auto a = clipped(lambda);
        for (std::size_t i = 0; i < n; ++i) acc += y[i] * a[i];
        return acc;
    };
    double span = C;
    for (double vi : v) span = std::max(span, std::abs(vi));
    double lo = -2.0 * (span + C), hi = 2.0 * (span + C);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return clipped(0.5 * (lo + hi));
}

struct DualSolution {
    std::vector<double> alpha;
    double objective = 0.0;
};

// Projected gradient ascent run to tight convergence; step = 1/L with L an
// upper bound on the Hessian spectral norm (row-sum bound).
inline DualSolution solve_dual_reference(const std::vector<std::vector<double>>& X,
                                         const std::vector<double>& y, double C,
                                         const qnid::KernelSpec& k, int iters = 60000) {
    const std::size_t n = X.size();
    auto K = kernel_matrix(X, k);
    double lipschitz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(y[i] * y[j] * K[i][j]);
        lipschitz = std::max(lipschitz, row);
    }
    const double step = 1.0 / std::max(lipschitz, 1e-12);

    std::vector<double> alpha(n, 0.0), grad(n), next(n);
    for (int it = 0; it < iters; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 1.0;
            for (std::size_t j = 0; j < n; ++j) acc -= y[i] * y[j] * K[i][j] * alpha[j];
            grad[i] = acc;
        }
        for (std::size_t i = 0; i < n; ++i) next[i] = alpha[i] + step * grad[i];
        next = project_dual(next, y, C);
        double moved = 0.0;
        for (std::size_t i = 0; i < n; ++i) moved = std::max(moved, std::abs(next[i] - alpha[i]));
        alpha = next;
        if (moved < 1e-14) break;
    }
    return {alpha, dual_objective(alpha, y, K)};
}

// Jacobi eigenvalue iteration for small symmetric matrices.
inline std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> A) {
    const std::size_t n = A.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off += A[p][q] * A[p][q];
        }
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(A[p][q]) < 1e-18) continue;
                const double theta = 0.5 * (A[q][q] - A[p][p]) / A[p][q];
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = A[i][p], aiq = A[i][q];
                    A[i][p] = c * aip - s * aiq;
                    A[i][q] = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = A[p][i], aqi = A[q][i];
                    A[p][i] = c * api - s * aqi;
                    A[q][i] = s * api + c * aqi;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = A[i][i];
    return eig;
}

} // namespace oracles
