#pragma once

#include "qnid/statevector.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qnid {

// Per-layer, per-qubit Euler angles (phi, theta, omega) for the entangling
// template. depth 0 is a valid value object (encoding only, no layers);
// init_weights always produces depth >= 1.
struct VqcWeights {
    std::size_t n_qubits = 0;
    std::size_t depth = 0;
    std::vector<double> angles; // depth * n_qubits * 3, layer-major, qubit-major
    std::uint64_t seed = 0;     // provenance only

    double& at(std::size_t layer, std::size_t qubit, std::size_t k) {
        return angles[(layer * n_qubits + qubit) * 3 + k];
    }
    double at(std::size_t layer, std::size_t qubit, std::size_t k) const {
        return angles[(layer * n_qubits + qubit) * 3 + k];
    }
};

// angles i.i.d. uniform on [0, 2*pi) from the seeded generator
VqcWeights init_weights(std::size_t n_qubits, std::size_t depth, std::uint64_t seed);

// One gate of the embedding circuit. Drives both the fast statevector path
// and the dense-matrix oracle so the two consume an identical sequence.
struct GateOp {
    enum class Kind { ry, rz, rot, cnot };
    Kind kind;
    std::size_t q0 = 0;     // target (single-qubit) or control (cnot)
    std::size_t q1 = 0;     // cnot target
    double a = 0.0, b = 0.0, c = 0.0; // angles: ry/rz use a; rot uses (a,b,c)=(phi,theta,omega)
};

// RY(x_i * angle_scale) on qubit i; features are expected in [0, 1]
std::vector<GateOp> encoding_ops(std::span<const double> x, double angle_scale);

// Layer l: Rot on every qubit, then the CNOT ring CNOT(q, (q + r_l) mod n)
// with range r_l = (l mod (n-1)) + 1; a single qubit gets no entangling gates.
std::vector<GateOp> entangling_ops(const VqcWeights& w);

void apply_op(QuantumState& s, const GateOp& op);
void apply_ops(QuantumState& s, std::span<const GateOp> ops);

// state must be |0...0>; throws on dimension mismatch or out-of-range feature
void angle_encode(QuantumState& s, std::span<const double> x, double angle_scale = 1.0);

void apply_strongly_entangling(QuantumState& s, const VqcWeights& w);

// new_state -> angle_encode -> entangling layers -> per-qubit <Z>.
// Exact expectations, no shot sampling; pure and thread-safe per call.
std::vector<double> embed(std::span<const double> x, const VqcWeights& w,
                          double angle_scale = 1.0);

// Batch embedding, samples fanned out across threads and gathered in input
// order. threads = 0 picks hardware concurrency.
std::vector<std::vector<double>> embed_batch(const std::vector<std::vector<double>>& xs,
                                             const VqcWeights& w, double angle_scale = 1.0,
                                             unsigned threads = 0);

// Plain-text weights file: header with shape and seed, then one angle per
// line in layer-major, qubit-major, (phi,theta,omega) order.
void save_weights(const VqcWeights& w, const std::string& path);
VqcWeights load_weights(const std::string& path);

// Embedding batch file: header line with n_qubits/depth/seed/angle-scale,
// then one line per sample (n_qubits reals, comma-separated, then the label).
void save_embeddings(const std::vector<std::vector<double>>& embeddings,
                     const std::vector<int>& labels, const VqcWeights& w, double angle_scale,
                     const std::string& path);
struct EmbeddingFile {
    std::size_t n_qubits = 0;
    std::size_t depth = 0;
    std::uint64_t seed = 0;
    double angle_scale = 1.0;
    std::vector<std::vector<double>> embeddings;
    std::vector<int> labels;
};
EmbeddingFile load_embeddings(const std::string& path);

} // namespace qnid
