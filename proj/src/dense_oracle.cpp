#include "qnid/dense_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qnid {

DenseMatrix DenseMatrix::identity(std::size_t dim) {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = cdouble{1.0, 0.0};
    return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
    if (dim_ != rhs.dim_) throw std::invalid_argument("DenseMatrix: dimension mismatch");
    DenseMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const cdouble aik = at(i, k);
            if (aik == cdouble{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                out.at(i, j) += aik * rhs.at(k, j);
            }
        }
    }
    return out;
}

std::vector<cdouble> DenseMatrix::apply(std::span<const cdouble> v) const {
    if (v.size() != dim_) throw std::invalid_argument("DenseMatrix::apply: dimension mismatch");
    std::vector<cdouble> out(dim_, cdouble{0.0, 0.0});
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out[i] += at(i, j) * v[j];
        }
    }
    return out;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            for (std::size_t k = 0; k < b.dim(); ++k) {
                for (std::size_t l = 0; l < b.dim(); ++l) {
                    out.at(i * b.dim() + k, j * b.dim() + l) = a.at(i, j) * b.at(k, l);
                }
            }
        }
    }
    return out;
}

namespace {

DenseMatrix single_qubit_matrix(const cdouble g[2][2]) {
    DenseMatrix m(2);
    m.at(0, 0) = g[0][0];
    m.at(0, 1) = g[0][1];
    m.at(1, 0) = g[1][0];
    m.at(1, 1) = g[1][1];
    return m;
}

// I^{q} (x) G (x) I^{n-1-q}; qubit 0 is the leftmost Kronecker factor
DenseMatrix embed_single(const DenseMatrix& g, std::size_t qubit, std::size_t n) {
    DenseMatrix out = DenseMatrix::identity(1);
    for (std::size_t q = 0; q < n; ++q) {
        out = (q == qubit) ? kron(out, g) : kron(out, DenseMatrix::identity(2));
    }
    return out;
}

DenseMatrix cnot_matrix(std::size_t control, std::size_t target, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t cmask = std::size_t{1} << (n - 1 - control);
    const std::size_t tmask = std::size_t{1} << (n - 1 - target);
    DenseMatrix out(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t row = (col & cmask) ? (col ^ tmask) : col;
        out.at(row, col) = cdouble{1.0, 0.0};
    }
    return out;
}

DenseMatrix ry_matrix(double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const cdouble g[2][2] = {{{c, 0.0}, {-s, 0.0}}, {{s, 0.0}, {c, 0.0}}};
    return single_qubit_matrix(g);
}

DenseMatrix rz_matrix(double phi) {
    const cdouble g[2][2] = {{{std::cos(0.5 * phi), -std::sin(0.5 * phi)}, {0.0, 0.0}},
                             {{0.0, 0.0}, {std::cos(0.5 * phi), std::sin(0.5 * phi)}}};
    return single_qubit_matrix(g);
}

} // namespace

DenseMatrix dense_unitary(std::span<const GateOp> ops, std::size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > 4) {
        throw std::invalid_argument("dense_unitary: n_qubits must be in [1, 4], got " +
                                    std::to_string(n_qubits));
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    DenseMatrix total = DenseMatrix::identity(dim);
    for (const auto& op : ops) {
        if (op.q0 >= n_qubits || (op.kind == GateOp::Kind::cnot && op.q1 >= n_qubits)) {
            throw std::invalid_argument("dense_unitary: qubit index out of range");
        }
        DenseMatrix u;
        switch (op.kind) {
        case GateOp::Kind::ry: u = embed_single(ry_matrix(op.a), op.q0, n_qubits); break;
        case GateOp::Kind::rz: u = embed_single(rz_matrix(op.a), op.q0, n_qubits); break;
        case GateOp::Kind::rot:
            // Rot(phi, theta, omega) = RZ(omega) RY(theta) RZ(phi)
            u = embed_single(rz_matrix(op.c) * ry_matrix(op.b) * rz_matrix(op.a), op.q0,
                             n_qubits);
            break;
        case GateOp::Kind::cnot:
            if (op.q0 == op.q1) {
                throw std::invalid_argument("dense_unitary: cnot control equals target");
            }
            u = cnot_matrix(op.q0, op.q1, n_qubits);
            break;
        }
        total = u * total;
    }
    return total;
}

std::vector<cdouble> dense_final_state(std::span<const GateOp> ops, std::size_t n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<cdouble> zero(dim, cdouble{0.0, 0.0});
    zero[0] = cdouble{1.0, 0.0};
    return dense_unitary(ops, n_qubits).apply(zero);
}

} // namespace qnid
