#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qnid {

// Flat key=value experiment configuration. One master seed pins an entire
// run; per-stage seeds (subset, split, weights, smo, logreg, rbf subsample)
// are derived from it unless explicitly overridden.
struct ExperimentConfig {
    std::string train_csv = "data/synthetic_train.csv";
    std::string test_csv = "data/synthetic_test.csv";
    std::string out_dir = "runs/default";

    std::uint64_t master_seed = 42;
    std::string scaler_fit = "joint"; // joint (train+test) or train

    std::size_t subset_size = 200;
    bool stratified = false;
    double split_fraction = 0.8;

    std::size_t circuit_depth = 2;
    double angle_scale = 1.0;
    std::optional<std::uint64_t> weight_seed; // default derived from master
    unsigned quantum_threads = 0;             // 0 = hardware concurrency
    std::string quantum_kernel = "rbf";       // kernel for the embedding SVM

    double svm_c = 1.0;
    double svm_tol = 1e-3;
    int svm_max_passes = 10;
    double svm_gamma = 0.0;               // 0 = the scale heuristic
    std::string svm_class_weight = "none"; // none (default) or balanced

    double logreg_lr = 0.1;
    int logreg_epochs = 1000;

    std::size_t rbf_subsample = 20000;
    std::vector<std::string> baseline_models = {"logreg", "svm_linear", "svm_rbf"};
    int report_decimals = 2; // text tables; 4 matches the machine format more closely

    std::uint64_t stage_seed(std::string_view stage) const;
    std::uint64_t effective_weight_seed() const;
};

// Parses a key=value file ('#' comments, blank lines allowed). Unknown keys
// or malformed values throw qnid::config_error naming the key.
ExperimentConfig load_config(const std::string& path);

// Applies one "key=value" override (the CLI --set flag).
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

// Snapshot of every key at its effective value, for the run manifest.
std::map<std::string, std::string> config_snapshot(const ExperimentConfig& cfg);

} // namespace qnid
