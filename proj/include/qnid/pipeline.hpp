#pragma once

#include "qnid/config.hpp"
#include "qnid/metrics.hpp"

#include <string>
#include <vector>

namespace qnid {

// Orchestration of the three experiments behind the CLI: every stage reads
// only files under cfg.out_dir written by earlier stages (preprocess is the
// single consumer of raw CSVs), writes its artifacts there and records them
// in <out_dir>/manifest.txt.

struct PreprocessResult {
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
};

struct ModelOutcome {
    std::string name;      // logreg / svm_linear / svm_rbf / quantum_svm
    bool ok = false;
    bool converged = true; // SVM iteration-budget flag (true for logreg)
    std::string error;     // set when ok == false
    MetricsReport report;  // valid when ok == true
};

struct ComparisonResult {
    std::size_t rows = 0;
    std::vector<std::string> missing; // stages without outputs
    std::string text;                 // rendered table
};

// Ingests the raw train/test CSVs, fits encoders (jointly) and the scaler
// (jointly or train-only per config), writes feature files plus the metadata
// sidecar under <out>/preprocess/.
PreprocessResult cmd_preprocess(const ExperimentConfig& cfg);

// Full-split experiment: trains the configured classical models on the full
// training features (rbf on a seeded subsample) and evaluates on the full
// test set. A single model's failure is recorded and does not abort the rest.
std::vector<ModelOutcome> cmd_baseline(const ExperimentConfig& cfg);

// 200-sample protocol: seeded subset of the combined corpus, 80/20 split,
// all classical models trained on the train side.
std::vector<ModelOutcome> cmd_small_sample(const ExperimentConfig& cfg);

// Quantum protocol: same subset and split as cmd_small_sample, embedded
// through the circuit; an SVM is trained on the training embeddings.
ModelOutcome cmd_quantum(const ExperimentConfig& cfg);

// Merges whatever per-model reports exist into one comparison table
// (text + key=value). Throws qnid::data_error when no stage has run.
ComparisonResult cmd_report(const ExperimentConfig& cfg);

// Re-hashes every artifact recorded in the manifest; returns problems.
std::vector<std::string> cmd_verify_manifest(const ExperimentConfig& cfg);

} // namespace qnid
