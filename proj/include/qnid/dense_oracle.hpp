#pragma once

#include "qnid/circuit.hpp"

#include <complex>
#include <span>
#include <vector>

namespace qnid {

// Brute-force verification path for the statevector kernels. Each gate is
// embedded into a full 2^n x 2^n matrix by Kronecker products (qubit 0 is the
// leftmost factor, matching the statevector bit convention) and the circuit
// unitary is accumulated by left-multiplication in application order. Kept
// deliberately independent of the in-place gate kernels. n is capped at 4.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t dim) : dim_(dim), m_(dim * dim, cdouble{0.0, 0.0}) {}

    static DenseMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    cdouble& at(std::size_t row, std::size_t col) { return m_[row * dim_ + col]; }
    const cdouble& at(std::size_t row, std::size_t col) const { return m_[row * dim_ + col]; }

    DenseMatrix operator*(const DenseMatrix& rhs) const;
    std::vector<cdouble> apply(std::span<const cdouble> v) const;

  private:
    std::size_t dim_ = 0;
    std::vector<cdouble> m_;
};

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

// Full circuit unitary for a gate sequence; throws std::invalid_argument
// when n_qubits > 4 or an op references a qubit out of range.
DenseMatrix dense_unitary(std::span<const GateOp> ops, std::size_t n_qubits);

// dense_unitary applied to |0...0>
std::vector<cdouble> dense_final_state(std::span<const GateOp> ops, std::size_t n_qubits);

} // namespace qnid
