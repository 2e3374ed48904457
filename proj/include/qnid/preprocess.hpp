#pragma once

#include "qnid/flow.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace qnid {

// Label encoding for the three categorical fields. Codes are assigned in
// lexicographic order of the category strings, so the mapping is independent
// of corpus order. Fitted jointly on train+test so no category is unseen.
struct CategoryEncoder {
    std::map<std::string, int> proto;
    std::map<std::string, int> service;
    std::map<std::string, int> state;

    // throws qnid::data_error naming field and value when unseen
    int code(std::string_view field, const std::string& value) const;
};

CategoryEncoder fit_encoders(std::span<const FlowRecord> records);

// Per-feature fitted extrema. transform maps x to (x - min) / (max - min),
// returns 0 for a degenerate feature (max == min) and clamps to [0, 1].
struct MinMaxScaler {
    std::vector<double> min;
    std::vector<double> max;

    double transform_one(std::size_t feature, double v) const;
    std::vector<double> transform(std::span<const double> raw) const;
};

MinMaxScaler fit_scaler(const std::vector<std::vector<double>>& rows);

// Pre-scaling numeric 8-vector in the fixed feature order
// (dur, proto, service, state, spkts, dpkts, sbytes, dbytes).
std::vector<double> numeric_features(const FlowRecord& r, const CategoryEncoder& enc);

// Full per-record transform: encode categoricals, then min-max scale.
std::vector<double> transform(const FlowRecord& r, const CategoryEncoder& enc,
                              const MinMaxScaler& scaler);

} // namespace qnid
