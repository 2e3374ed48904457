#include "qnid/preprocess.hpp"

#include "qnid/errors.hpp"

#include <algorithm>

namespace qnid {

int CategoryEncoder::code(std::string_view field, const std::string& value) const {
    const std::map<std::string, int>* m = nullptr;
    if (field == "proto") m = &proto;
    else if (field == "service") m = &service;
    else if (field == "state") m = &state;
    else throw data_error("encoder: unknown categorical field '" + std::string(field) + "'");
    auto it = m->find(value);
    if (it == m->end()) {
        throw data_error("encoder: unseen category '" + value + "' in field '" +
                         std::string(field) + "'");
    }
    return it->second;
}

CategoryEncoder fit_encoders(std::span<const FlowRecord> records) {
    if (records.empty()) throw data_error("fit_encoders: no records");
    CategoryEncoder enc;
    for (const auto& r : records) {
        enc.proto.emplace(r.proto, 0);
        enc.service.emplace(r.service, 0);
        enc.state.emplace(r.state, 0);
    }
    // std::map iterates lexicographically; assign contiguous codes in that order
    for (auto* m : {&enc.proto, &enc.service, &enc.state}) {
        int next = 0;
        for (auto& [key, code] : *m) code = next++;
    }
    return enc;
}

double MinMaxScaler::transform_one(std::size_t feature, double v) const {
    if (feature >= min.size()) {
        throw data_error("scaler: feature index " + std::to_string(feature) +
                         " out of range for " + std::to_string(min.size()) + " features");
    }
    const double lo = min[feature];
    const double hi = max[feature];
    if (hi == lo) return 0.0; // constant feature carries no information
    const double scaled = (v - lo) / (hi - lo);
    return std::clamp(scaled, 0.0, 1.0);
}

std::vector<double> MinMaxScaler::transform(std::span<const double> raw) const {
    if (raw.size() != min.size()) {
        throw data_error("scaler: vector has " + std::to_string(raw.size()) +
                         " features, scaler fitted on " + std::to_string(min.size()));
    }
    std::vector<double> out(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) out[j] = transform_one(j, raw[j]);
    return out;
}

MinMaxScaler fit_scaler(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw data_error("fit_scaler: no rows");
    const std::size_t d = rows.front().size();
    MinMaxScaler s;
    s.min.assign(d, 0.0);
    s.max.assign(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        s.min[j] = rows.front()[j];
        s.max[j] = rows.front()[j];
    }
    for (const auto& row : rows) {
        if (row.size() != d) throw data_error("fit_scaler: inconsistent row widths");
        for (std::size_t j = 0; j < d; ++j) {
            s.min[j] = std::min(s.min[j], row[j]);
            s.max[j] = std::max(s.max[j], row[j]);
        }
    }
    return s;
}

std::vector<double> numeric_features(const FlowRecord& r, const CategoryEncoder& enc) {
    return {r.dur,
            static_cast<double>(enc.code("proto", r.proto)),
            static_cast<double>(enc.code("service", r.service)),
            static_cast<double>(enc.code("state", r.state)),
            static_cast<double>(r.spkts),
            static_cast<double>(r.dpkts),
            static_cast<double>(r.sbytes),
            static_cast<double>(r.dbytes)};
}

std::vector<double> transform(const FlowRecord& r, const CategoryEncoder& enc,
                              const MinMaxScaler& scaler) {
    return scaler.transform(numeric_features(r, enc));
}

} // namespace qnid
