#pragma once

#include <span>
#include <string>
#include <vector>

namespace qnid {

struct KernelSpec {
    enum class Kind { linear, rbf };
    Kind kind = Kind::linear;
    double gamma = 1.0; // rbf only, must be > 0

    static KernelSpec linear() { return {Kind::linear, 0.0}; }
    static KernelSpec rbf(double gamma);

    std::string name() const { return kind == Kind::linear ? "linear" : "rbf"; }
};

// linear: a.b; rbf: exp(-gamma * ||a - b||^2)
double kernel_eval(const KernelSpec& k, std::span<const double> a, std::span<const double> b);

// Default rbf gamma, 1 / (d * var) with var the pooled population variance
// of all matrix entries. Throws qnid::model_error for constant input.
double gamma_scale(const std::vector<std::vector<double>>& X);

} // namespace qnid
