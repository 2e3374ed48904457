#include "qnid/kernel.hpp"

#include "qnid/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace qnid {

KernelSpec KernelSpec::rbf(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("KernelSpec: rbf gamma must be > 0");
    return {Kind::rbf, gamma};
}

double kernel_eval(const KernelSpec& k, std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("kernel_eval: dimension mismatch (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    if (k.kind == KernelSpec::Kind::linear) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
        return acc;
    }
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sq += diff * diff;
    }
    return std::exp(-k.gamma * sq);
}

double gamma_scale(const std::vector<std::vector<double>>& X) {
    if (X.empty() || X.front().empty()) throw model_error("gamma_scale: empty input");
    const std::size_t d = X.front().size();
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (const auto& row : X) {
        if (row.size() != d) throw model_error("gamma_scale: inconsistent feature dimension");
        for (double v : row) {
            sum += v;
            sum_sq += v * v;
            ++count;
        }
    }
    const double mean = sum / static_cast<double>(count);
    const double var = sum_sq / static_cast<double>(count) - mean * mean;
    if (var <= 0.0) {
        throw model_error("gamma_scale: zero variance input, pass an explicit gamma");
    }
    return 1.0 / (static_cast<double>(d) * var);
}

} // namespace qnid
