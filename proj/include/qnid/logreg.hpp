#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qnid {

struct LogRegModel {
    std::vector<double> weights;
    double bias = 0.0;
    // training metadata
    double lr = 0.1;
    int epochs = 1000;
    std::uint64_t seed = 0;
};

double sigmoid(double z);

// Mean binary cross-entropy of the linear model over (X, y).
double logreg_loss(std::span<const double> w, double bias,
                   const std::vector<std::vector<double>>& X, std::span<const int> y);

// Analytic gradient of logreg_loss; grad_w must have size d.
void logreg_gradient(std::span<const double> w, double bias,
                     const std::vector<std::vector<double>>& X, std::span<const int> y,
                     std::span<double> grad_w, double& grad_b);

// Full-batch gradient descent from zero initialization. Throws
// qnid::model_error on single-class input or non-finite data/parameters.
LogRegModel train_logreg(const std::vector<std::vector<double>>& X, std::span<const int> y,
                         double lr = 0.1, int epochs = 1000, std::uint64_t seed = 0);

// probability = sigmoid(w.x + b); label 1 iff probability >= 0.5
std::pair<int, double> predict_logreg(const LogRegModel& m, std::span<const double> x);

void save_logreg(const LogRegModel& m, const std::string& path);
LogRegModel load_logreg(const std::string& path);

} // namespace qnid
