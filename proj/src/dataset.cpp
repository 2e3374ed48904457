#include "qnid/dataset.hpp"

#include "qnid/errors.hpp"
#include "qnid/rng.hpp"
#include "qnid/util.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

namespace qnid {

std::size_t Dataset::class_count(int label) const {
    std::size_t n = 0;
    for (int y : labels) {
        if (y == label) ++n;
    }
    return n;
}

namespace {

Dataset gather(const Dataset& ds, const std::vector<std::size_t>& indices, std::string tag) {
    Dataset out;
    out.features.reserve(indices.size());
    out.labels.reserve(indices.size());
    for (std::size_t i : indices) {
        out.features.push_back(ds.features[i]);
        out.labels.push_back(ds.labels[i]);
    }
    out.sources = ds.sources;
    out.tag = std::move(tag);
    return out;
}

std::vector<std::size_t> iota_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

} // namespace

Dataset subsample(const Dataset& ds, std::size_t n, std::uint64_t seed, bool stratified) {
    if (n == 0) throw data_error("subsample: n must be positive");
    if (n > ds.size()) {
        throw data_error("subsample: requested " + std::to_string(n) + " records from " +
                         std::to_string(ds.size()));
    }
    Rng rng(seed);
    std::vector<std::size_t> chosen;
    if (!stratified) {
        auto idx = iota_indices(ds.size());
        shuffle(idx, rng);
        chosen.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n));
    } else {
        std::vector<std::size_t> neg, pos;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            (ds.labels[i] == 1 ? pos : neg).push_back(i);
        }
        // per-class counts proportional to the corpus ratio, within one sample
        std::size_t n_pos = static_cast<std::size_t>(std::llround(
            static_cast<double>(n) * static_cast<double>(pos.size()) /
            static_cast<double>(ds.size())));
        n_pos = std::min(n_pos, pos.size());
        std::size_t n_neg = n - n_pos;
        if (n_neg > neg.size()) {
            n_neg = neg.size();
            n_pos = n - n_neg;
        }
        shuffle(neg, rng);
        shuffle(pos, rng);
        chosen.assign(neg.begin(), neg.begin() + static_cast<std::ptrdiff_t>(n_neg));
        chosen.insert(chosen.end(), pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(n_pos));
        shuffle(chosen, rng);
    }
    Dataset out = gather(ds, chosen, "subset");
    out.sources.push_back("subsample n=" + std::to_string(n) + " seed=" + std::to_string(seed) +
                          " stratified=" + (stratified ? "1" : "0") +
                          " class0=" + std::to_string(out.class_count(0)) +
                          " class1=" + std::to_string(out.class_count(1)));
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw data_error("split: train_fraction must be in (0, 1), got " +
                         format_double(train_fraction));
    }
    const std::size_t n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(ds.size())));
    if (n_train == 0 || n_train == ds.size()) {
        throw data_error("split: fraction " + format_double(train_fraction) + " leaves a " +
                         (n_train == 0 ? std::string("train") : std::string("test")) +
                         " side empty for " + std::to_string(ds.size()) + " records");
    }
    Rng rng(seed);
    auto idx = iota_indices(ds.size());
    shuffle(idx, rng);
    std::vector<std::size_t> train_idx(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<std::size_t> test_idx(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
    return {gather(ds, train_idx, "train"), gather(ds, test_idx, "test")};
}

void save_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw data_error("cannot write dataset file: " + path);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t j = 0; j < ds.features[i].size(); ++j) {
            if (j) f << ",";
            f << format_double(ds.features[i][j]);
        }
        f << "," << ds.labels[i] << "\n";
    }
}

Dataset load_dataset(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("cannot open dataset file: " + path);
    Dataset ds;
    ds.sources.push_back(path);
    std::string line;
    std::size_t row = 0;
    std::size_t width = 0;
    while (std::getline(f, line)) {
        std::string_view v = trim(line);
        if (v.empty()) continue;
        ++row;
        auto cells = split(v, ',');
        if (cells.size() < 2) {
            throw data_error(path + ": row " + std::to_string(row) + " has too few cells");
        }
        if (width == 0) width = cells.size();
        if (cells.size() != width) {
            throw data_error(path + ": row " + std::to_string(row) +
                             " width differs from first row");
        }
        std::vector<double> x(cells.size() - 1);
        for (std::size_t j = 0; j + 1 < cells.size(); ++j) {
            x[j] = parse_double(cells[j], path + " row " + std::to_string(row));
        }
        std::uint64_t label = parse_u64(cells.back(), path + " row " + std::to_string(row));
        if (label > 1) {
            throw data_error(path + ": row " + std::to_string(row) + " label must be 0 or 1");
        }
        ds.features.push_back(std::move(x));
        ds.labels.push_back(static_cast<int>(label));
    }
    if (ds.size() == 0) throw data_error(path + ": no data rows");
    return ds;
}

} // namespace qnid
