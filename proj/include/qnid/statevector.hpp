#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qnid {

using cdouble = std::complex<double>;

// Dense statevector over n qubits, 2^n amplitudes. Qubit 0 is the leftmost
// (most significant) bit of the basis index, so for qubit q the pair stride
// is 2^(n-1-q). Gates mutate in place; a state must not be shared across
// threads while being mutated.
class QuantumState {
  public:
    // constructs |0...0>; 1 <= n_qubits <= 12
    explicit QuantumState(std::size_t n_qubits);

    std::size_t n_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }

    cdouble& amp(std::size_t i) { return amps_[i]; }
    const cdouble& amp(std::size_t i) const { return amps_[i]; }
    std::span<const cdouble> amplitudes() const { return amps_; }

    double norm_sq() const;

  private:
    std::size_t n_;
    std::vector<cdouble> amps_;
};

// RY(theta) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]]
void apply_ry(QuantumState& s, std::size_t qubit, double theta);

// RZ(phi) = diag(e^{-i phi/2}, e^{+i phi/2})
void apply_rz(QuantumState& s, std::size_t qubit, double phi);

// Rot(phi, theta, omega) = RZ(omega) * RY(theta) * RZ(phi), rightmost first
void apply_rot(QuantumState& s, std::size_t qubit, double phi, double theta, double omega);

void apply_cnot(QuantumState& s, std::size_t control, std::size_t target);

// <Z_qubit> = sum over basis states of |amp|^2 * (+1 if qubit bit is 0 else -1)
double expval_z(const QuantumState& s, std::size_t qubit);

} // namespace qnid
