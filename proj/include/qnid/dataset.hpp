#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qnid {

// Ordered feature vectors with parallel labels, plus provenance.
struct Dataset {
    std::vector<std::vector<double>> features;
    std::vector<int> labels;
    std::vector<std::string> sources; // input file names this data came from
    std::string tag;                  // train / test / subset

    std::size_t size() const { return features.size(); }
    std::size_t class_count(int label) const;
};

// Deterministic sample of exactly n records without replacement. With
// stratified = false the draw is uniform; with stratified = true per-class
// counts are proportional to the corpus ratio (within one sample). Identical
// (ds, n, seed, flag) give identical output, including order.
Dataset subsample(const Dataset& ds, std::size_t n, std::uint64_t seed, bool stratified);

// Disjoint, exhaustive partition with |train| = round(fraction * |ds|);
// deterministic for a fixed seed.
std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, std::uint64_t seed);

// One record per line: feature values comma-separated, then the integer
// label. Values are written in shortest round-trip form, so a reload
// reproduces the doubles bit-for-bit.
void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

} // namespace qnid
