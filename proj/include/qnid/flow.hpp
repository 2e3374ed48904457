#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qnid {

// One UNSW-NB15 flow restricted to the eight selected attributes plus the
// binary label. Numeric fields are non-negative; label is 0 (benign) or
// 1 (attack).
struct FlowRecord {
    double dur = 0.0;
    std::string proto;
    std::string service;
    std::string state;
    std::uint64_t spkts = 0;
    std::uint64_t dpkts = 0;
    std::uint64_t sbytes = 0;
    std::uint64_t dbytes = 0;
    int label = 0;
};

// feature order is fixed everywhere downstream
inline constexpr std::array<std::string_view, 8> kFeatureNames = {
    "dur", "proto", "service", "state", "spkts", "dpkts", "sbytes", "dbytes"};
inline constexpr std::string_view kLabelColumn = "label";

// Reads a comma-separated file whose header row must contain the eight
// feature columns and the label column (extra columns such as id or
// attack_cat are ignored). Throws qnid::data_error:
//   - missing required column, naming the column
//   - unparseable or negative numeric cell, naming column and data row
//   - header-only or empty file
std::vector<FlowRecord> load_csv(const std::string& path);

} // namespace qnid
