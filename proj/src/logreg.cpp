#include "qnid/logreg.hpp"

#include "qnid/errors.hpp"
#include "qnid/util.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace qnid {

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// log(1 + e^z) without overflow
double softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

void check_training_input(const std::vector<std::vector<double>>& X, std::span<const int> y) {
    if (X.size() != y.size() || X.size() < 2) {
        throw model_error("train_logreg: need at least 2 samples with matching labels");
    }
    bool has0 = false, has1 = false;
    for (int label : y) {
        if (label == 0) has0 = true;
        else if (label == 1) has1 = true;
        else throw model_error("train_logreg: labels must be 0 or 1");
    }
    if (!has0 || !has1) throw model_error("train_logreg: both classes must be present");
    const std::size_t d = X.front().size();
    for (const auto& row : X) {
        if (row.size() != d) throw model_error("train_logreg: inconsistent feature dimension");
        for (double v : row) {
            if (!std::isfinite(v)) throw model_error("train_logreg: non-finite feature value");
        }
    }
}

} // namespace

double logreg_loss(std::span<const double> w, double bias,
                   const std::vector<std::vector<double>>& X, std::span<const int> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        const double z = dot(w, X[i]) + bias;
        // BCE: softplus(z) - y*z  ==  -[y log p + (1-y) log(1-p)]
        acc += softplus(z) - static_cast<double>(y[i]) * z;
    }
    return acc / static_cast<double>(X.size());
}

void logreg_gradient(std::span<const double> w, double bias,
                     const std::vector<std::vector<double>>& X, std::span<const int> y,
                     std::span<double> grad_w, double& grad_b) {
    const std::size_t n = X.size();
    const std::size_t d = w.size();
    for (auto& g : grad_w) g = 0.0;
    grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double err = sigmoid(dot(w, X[i]) + bias) - static_cast<double>(y[i]);
        for (std::size_t j = 0; j < d; ++j) grad_w[j] += err * X[i][j];
        grad_b += err;
    }
    for (auto& g : grad_w) g /= static_cast<double>(n);
    grad_b /= static_cast<double>(n);
}

LogRegModel train_logreg(const std::vector<std::vector<double>>& X, std::span<const int> y,
                         double lr, int epochs, std::uint64_t seed) {
    check_training_input(X, y);
    if (epochs < 1) throw model_error("train_logreg: epochs must be >= 1");

    const std::size_t d = X.front().size();
    LogRegModel m;
    m.weights.assign(d, 0.0);
    m.bias = 0.0;
    m.lr = lr;
    m.epochs = epochs;
    m.seed = seed;

    std::vector<double> grad(d);
    double grad_b = 0.0;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        logreg_gradient(m.weights, m.bias, X, y, grad, grad_b);
        for (std::size_t j = 0; j < d; ++j) m.weights[j] -= lr * grad[j];
        m.bias -= lr * grad_b;
    }
    for (double wv : m.weights) {
        if (!std::isfinite(wv)) throw model_error("train_logreg: diverged to non-finite weights");
    }
    if (!std::isfinite(m.bias)) throw model_error("train_logreg: diverged to non-finite bias");
    return m;
}

std::pair<int, double> predict_logreg(const LogRegModel& m, std::span<const double> x) {
    if (x.size() != m.weights.size()) {
        throw std::invalid_argument("predict_logreg: dimension mismatch (" +
                                    std::to_string(x.size()) + " vs " +
                                    std::to_string(m.weights.size()) + ")");
    }
    const double p = sigmoid(dot(m.weights, x) + m.bias);
    return {p >= 0.5 ? 1 : 0, p};
}

void save_logreg(const LogRegModel& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw data_error("cannot write model file: " + path);
    f << "model=logreg\n";
    f << "dim=" << m.weights.size() << "\n";
    f << "lr=" << format_double(m.lr) << "\n";
    f << "epochs=" << m.epochs << "\n";
    f << "seed=" << m.seed << "\n";
    f << "bias=" << format_double(m.bias) << "\n";
    for (double w : m.weights) f << format_double(w) << "\n";
}

LogRegModel load_logreg(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("cannot open model file: " + path);
    LogRegModel m;
    std::size_t dim = 0;
    std::string line;
    for (int i = 0; i < 6; ++i) {
        if (!std::getline(f, line)) throw data_error(path + ": truncated model header");
        std::string_view v = trim(line);
        std::size_t eq = v.find('=');
        if (eq == std::string_view::npos) {
            throw data_error(path + ": malformed header line '" + line + "'");
        }
        std::string_view key = v.substr(0, eq);
        std::string_view val = v.substr(eq + 1);
        if (key == "model") {
            if (val != "logreg") throw data_error(path + ": not a logreg model file");
        } else if (key == "dim") dim = parse_u64(val, path);
        else if (key == "lr") m.lr = parse_double(val, path);
        else if (key == "epochs") m.epochs = static_cast<int>(parse_u64(val, path));
        else if (key == "seed") m.seed = parse_u64(val, path);
        else if (key == "bias") m.bias = parse_double(val, path);
        else throw data_error(path + ": unknown header key '" + std::string(key) + "'");
    }
    while (std::getline(f, line)) {
        std::string_view v = trim(line);
        if (v.empty()) continue;
        m.weights.push_back(parse_double(v, path));
    }
    if (m.weights.size() != dim) {
        throw data_error(path + ": expected " + std::to_string(dim) + " weights, found " +
                         std::to_string(m.weights.size()));
    }
    return m;
}

} // namespace qnid
