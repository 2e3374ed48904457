#include "qnid/circuit.hpp"

#include "qnid/errors.hpp"
#include "qnid/rng.hpp"
#include "qnid/util.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qnid {

VqcWeights init_weights(std::size_t n_qubits, std::size_t depth, std::uint64_t seed) {
    if (n_qubits < 1) throw std::invalid_argument("init_weights: n_qubits must be >= 1");
    if (depth < 1) throw std::invalid_argument("init_weights: depth must be >= 1");
    VqcWeights w;
    w.n_qubits = n_qubits;
    w.depth = depth;
    w.seed = seed;
    w.angles.resize(depth * n_qubits * 3);
    Rng rng(seed);
    for (auto& a : w.angles) a = rng.next_double() * 2.0 * std::numbers::pi;
    return w;
}

std::vector<GateOp> encoding_ops(std::span<const double> x, double angle_scale) {
    std::vector<GateOp> ops;
    ops.reserve(x.size());
    for (std::size_t q = 0; q < x.size(); ++q) {
        ops.push_back({GateOp::Kind::ry, q, 0, x[q] * angle_scale, 0.0, 0.0});
    }
    return ops;
}

std::vector<GateOp> entangling_ops(const VqcWeights& w) {
    const std::size_t n = w.n_qubits;
    std::vector<GateOp> ops;
    ops.reserve(w.depth * n * 2);
    for (std::size_t l = 0; l < w.depth; ++l) {
        for (std::size_t q = 0; q < n; ++q) {
            ops.push_back({GateOp::Kind::rot, q, 0, w.at(l, q, 0), w.at(l, q, 1), w.at(l, q, 2)});
        }
        if (n == 1) continue;
        const std::size_t range = (l % (n - 1)) + 1;
        for (std::size_t q = 0; q < n; ++q) {
            ops.push_back({GateOp::Kind::cnot, q, (q + range) % n, 0.0, 0.0, 0.0});
        }
    }
    return ops;
}

void apply_op(QuantumState& s, const GateOp& op) {
    switch (op.kind) {
    case GateOp::Kind::ry: apply_ry(s, op.q0, op.a); break;
    case GateOp::Kind::rz: apply_rz(s, op.q0, op.a); break;
    case GateOp::Kind::rot: apply_rot(s, op.q0, op.a, op.b, op.c); break;
    case GateOp::Kind::cnot: apply_cnot(s, op.q0, op.q1); break;
    }
}

void apply_ops(QuantumState& s, std::span<const GateOp> ops) {
    for (const auto& op : ops) apply_op(s, op);
}

void angle_encode(QuantumState& s, std::span<const double> x, double angle_scale) {
    if (x.size() != s.n_qubits()) {
        throw std::invalid_argument("angle_encode: feature dimension " +
                                    std::to_string(x.size()) + " != n_qubits " +
                                    std::to_string(s.n_qubits()));
    }
    apply_ops(s, encoding_ops(x, angle_scale));
}

void apply_strongly_entangling(QuantumState& s, const VqcWeights& w) {
    if (w.n_qubits != s.n_qubits()) {
        throw std::invalid_argument("apply_strongly_entangling: weights are for " +
                                    std::to_string(w.n_qubits) + " qubits, state has " +
                                    std::to_string(s.n_qubits()));
    }
    if (w.angles.size() != w.depth * w.n_qubits * 3) {
        throw std::invalid_argument("apply_strongly_entangling: angle count " +
                                    std::to_string(w.angles.size()) + " does not match shape " +
                                    std::to_string(w.depth) + "x" + std::to_string(w.n_qubits) +
                                    "x3");
    }
    apply_ops(s, entangling_ops(w));
}

std::vector<double> embed(std::span<const double> x, const VqcWeights& w, double angle_scale) {
    if (x.size() != w.n_qubits) {
        throw std::invalid_argument("embed: feature dimension " + std::to_string(x.size()) +
                                    " != n_qubits " + std::to_string(w.n_qubits));
    }
    QuantumState s(w.n_qubits);
    angle_encode(s, x, angle_scale);
    apply_strongly_entangling(s, w);
    std::vector<double> out(w.n_qubits);
    for (std::size_t q = 0; q < w.n_qubits; ++q) out[q] = expval_z(s, q);
    return out;
}

std::vector<std::vector<double>> embed_batch(const std::vector<std::vector<double>>& xs,
                                             const VqcWeights& w, double angle_scale,
                                             unsigned threads) {
    std::vector<std::vector<double>> out(xs.size());
    if (xs.empty()) return out;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(xs.size()));

    if (threads == 1) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = embed(xs[i], w, angle_scale);
        return out;
    }
    // each worker owns a contiguous index range; results land at their input
    // index, so the output is order-deterministic for any worker count
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (xs.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(xs.size(), lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = embed(xs[i], w, angle_scale);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

void save_weights(const VqcWeights& w, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw data_error("cannot write weights file: " + path);
    f << "# vqc weights\n";
    f << "n_qubits=" << w.n_qubits << "\n";
    f << "depth=" << w.depth << "\n";
    f << "seed=" << w.seed << "\n";
    for (double a : w.angles) f << format_double(a) << "\n";
}

VqcWeights load_weights(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("cannot open weights file: " + path);
    VqcWeights w;
    std::string line;
    std::size_t header = 0;
    while (header < 3 && std::getline(f, line)) {
        std::string_view v = trim(line);
        if (v.empty() || v.front() == '#') continue;
        std::size_t eq = v.find('=');
        if (eq == std::string_view::npos) {
            throw data_error("weights file " + path + ": malformed header line '" + line + "'");
        }
        std::string_view key = v.substr(0, eq);
        std::string_view val = v.substr(eq + 1);
        if (key == "n_qubits") w.n_qubits = parse_u64(val, path);
        else if (key == "depth") w.depth = parse_u64(val, path);
        else if (key == "seed") w.seed = parse_u64(val, path);
        else throw data_error("weights file " + path + ": unknown header key '" +
                              std::string(key) + "'");
        ++header;
    }
    const std::size_t expect = w.depth * w.n_qubits * 3;
    while (std::getline(f, line)) {
        std::string_view v = trim(line);
        if (v.empty() || v.front() == '#') continue;
        w.angles.push_back(parse_double(v, path));
    }
    if (w.angles.size() != expect) {
        throw data_error("weights file " + path + ": expected " + std::to_string(expect) +
                         " angles, found " + std::to_string(w.angles.size()));
    }
    return w;
}

void save_embeddings(const std::vector<std::vector<double>>& embeddings,
                     const std::vector<int>& labels, const VqcWeights& w, double angle_scale,
                     const std::string& path) {
    if (embeddings.size() != labels.size()) {
        throw std::invalid_argument("save_embeddings: embeddings/labels size mismatch");
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw data_error("cannot write embeddings file: " + path);
    f << "# n_qubits=" << w.n_qubits << " depth=" << w.depth << " seed=" << w.seed
      << " angle_scale=" << format_double(angle_scale) << "\n";
    for (std::size_t i = 0; i < embeddings.size(); ++i) {
        for (std::size_t q = 0; q < embeddings[i].size(); ++q) {
            if (q) f << ",";
            f << format_double(embeddings[i][q]);
        }
        f << "," << labels[i] << "\n";
    }
}

EmbeddingFile load_embeddings(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("cannot open embeddings file: " + path);
    EmbeddingFile out;
    std::string line;
    if (!std::getline(f, line)) throw data_error("embeddings file " + path + ": empty");
    {
        std::string_view h = trim(line);
        if (h.empty() || h.front() != '#') {
            throw data_error("embeddings file " + path + ": missing header line");
        }
        h.remove_prefix(1);
        for (const auto& tok : split(h, ' ')) {
            std::string_view t = trim(tok);
            if (t.empty()) continue;
            std::size_t eq = t.find('=');
            if (eq == std::string_view::npos) continue;
            std::string_view key = t.substr(0, eq);
            std::string_view val = t.substr(eq + 1);
            if (key == "n_qubits") out.n_qubits = parse_u64(val, path);
            else if (key == "depth") out.depth = parse_u64(val, path);
            else if (key == "seed") out.seed = parse_u64(val, path);
            else if (key == "angle_scale") out.angle_scale = parse_double(val, path);
        }
    }
    std::size_t row = 0;
    while (std::getline(f, line)) {
        std::string_view v = trim(line);
        if (v.empty()) continue;
        ++row;
        auto cells = split(v, ',');
        if (cells.size() != out.n_qubits + 1) {
            throw data_error("embeddings file " + path + ": row " + std::to_string(row) +
                             " has " + std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(out.n_qubits + 1));
        }
        std::vector<double> e(out.n_qubits);
        for (std::size_t q = 0; q < out.n_qubits; ++q) {
            e[q] = parse_double(cells[q], path + " row " + std::to_string(row));
        }
        std::uint64_t label = parse_u64(cells.back(), path + " row " + std::to_string(row));
        if (label > 1) {
            throw data_error("embeddings file " + path + ": row " + std::to_string(row) +
                             " label must be 0 or 1");
        }
        out.embeddings.push_back(std::move(e));
        out.labels.push_back(static_cast<int>(label));
    }
    return out;
}

} // namespace qnid
