#include "qnid/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qnid {

namespace {

constexpr std::size_t kMaxQubits = 12;

void check_qubit(const QuantumState& s, std::size_t qubit, const char* op) {
    if (qubit >= s.n_qubits()) {
        throw std::out_of_range(std::string(op) + ": qubit " + std::to_string(qubit) +
                                " out of range for " + std::to_string(s.n_qubits()) + " qubits");
    }
}

// bit mask of qubit q under the qubit-0-is-most-significant convention
std::size_t qubit_mask(const QuantumState& s, std::size_t qubit) {
    return std::size_t{1} << (s.n_qubits() - 1 - qubit);
}

} // namespace

QuantumState::QuantumState(std::size_t n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::out_of_range("QuantumState: n_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, cdouble{0.0, 0.0});
    amps_[0] = cdouble{1.0, 0.0};
}

double QuantumState::norm_sq() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return acc;
}

void apply_ry(QuantumState& s, std::size_t qubit, double theta) {
    check_qubit(s, qubit, "apply_ry");
    const std::size_t stride = qubit_mask(s, qubit);
    const double c = std::cos(0.5 * theta);
    const double sn = std::sin(0.5 * theta);
    for (std::size_t base = 0; base < s.dim(); base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const cdouble a0 = s.amp(i0);
            const cdouble a1 = s.amp(i1);
            s.amp(i0) = c * a0 - sn * a1;
            s.amp(i1) = sn * a0 + c * a1;
        }
    }
}

void apply_rz(QuantumState& s, std::size_t qubit, double phi) {
    check_qubit(s, qubit, "apply_rz");
    const std::size_t stride = qubit_mask(s, qubit);
    const cdouble e0{std::cos(0.5 * phi), -std::sin(0.5 * phi)};
    const cdouble e1{std::cos(0.5 * phi), std::sin(0.5 * phi)};
    for (std::size_t base = 0; base < s.dim(); base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            s.amp(i0) *= e0;
            s.amp(i1) *= e1;
        }
    }
}

void apply_rot(QuantumState& s, std::size_t qubit, double phi, double theta, double omega) {
    check_qubit(s, qubit, "apply_rot");
    apply_rz(s, qubit, phi);
    apply_ry(s, qubit, theta);
    apply_rz(s, qubit, omega);
}

void apply_cnot(QuantumState& s, std::size_t control, std::size_t target) {
    check_qubit(s, control, "apply_cnot");
    check_qubit(s, target, "apply_cnot");
    if (control == target) {
        throw std::invalid_argument("apply_cnot: control and target must differ");
    }
    const std::size_t cmask = qubit_mask(s, control);
    const std::size_t tmask = qubit_mask(s, target);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        // visit each swapped pair once: control bit set, target bit clear
        if ((i & cmask) != 0 && (i & tmask) == 0) {
            std::swap(s.amp(i), s.amp(i | tmask));
        }
    }
}

double expval_z(const QuantumState& s, std::size_t qubit) {
    check_qubit(s, qubit, "expval_z");
    const std::size_t mask = qubit_mask(s, qubit);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const double p = std::norm(s.amp(i));
        acc += (i & mask) ? -p : p;
    }
    return acc;
}

} // namespace qnid
