#include "stabloc/oracle.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace stabloc {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

StateVector::StateVector(std::size_t n) : n_(n) {
    if (n > kMaxQubits) throw std::invalid_argument("StateVector: too many qubits");
    amps_.assign(std::size_t(1) << n, 0.0);
    amps_[0] = 1.0;
}

void StateVector::apply_h(std::size_t q) {
    const std::size_t mask = std::size_t(1) << bit(q);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) continue;
        auto a = amps_[i], b = amps_[i | mask];
        amps_[i] = (a + b) * kInvSqrt2;
        amps_[i | mask] = (a - b) * kInvSqrt2;
    }
}

void StateVector::apply_s(std::size_t q) {
    const std::size_t mask = std::size_t(1) << bit(q);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (i & mask) amps_[i] *= kI;
}

void StateVector::apply_z(std::size_t q) {
    const std::size_t mask = std::size_t(1) << bit(q);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (i & mask) amps_[i] = -amps_[i];
}

void StateVector::apply_x(std::size_t q) {
    const std::size_t mask = std::size_t(1) << bit(q);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (!(i & mask)) std::swap(amps_[i], amps_[i | mask]);
}

void StateVector::apply_cz(std::size_t a, std::size_t b) {
    const std::size_t mask = (std::size_t(1) << bit(a)) | (std::size_t(1) << bit(b));
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & mask) == mask) amps_[i] = -amps_[i];
}

void StateVector::apply_pauli(const PauliOperator& g) {
    assert(g.n == n_);
    // Build bit masks for the X and Z parts.
    std::size_t xmask = 0, zmask = 0;
    for (std::size_t q = 0; q < n_; ++q) {
        if (g.x.get(q)) xmask |= std::size_t(1) << bit(q);
        if (g.z.get(q)) zmask |= std::size_t(1) << bit(q);
    }
    // Overall prefactor i^{phase + x·zᵀ}, with Z acting before X.
    int pre = (g.phase + static_cast<int>(g.x.dot_int(g.z))) % 4;
    std::complex<double> prefactor = 1.0;
    for (int k = 0; k < pre; ++k) prefactor *= kI;

    std::vector<std::complex<double>> out(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        // (X^x Z^z)|i⟩ = (-1)^{z·i} |i ⊕ x⟩
        double sgn = (std::popcount(i & zmask) % 2 == 0) ? 1.0 : -1.0;
        out[i ^ xmask] = prefactor * sgn * amps_[i];
    }
    amps_ = std::move(out);
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::normalize() {
    double nrm = norm();
    if (nrm == 0.0) return;
    for (auto& a : amps_) a /= nrm;
}

std::complex<double> StateVector::inner(const StateVector& other) const {
    assert(n_ == other.n_);
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        s += std::conj(amps_[i]) * other.amps_[i];
    return s;
}

StateVector run_circuit(const GraphCircuit& circuit) {
    StateVector psi(circuit.n);
    for (std::size_t q = 0; q < circuit.n; ++q) psi.apply_h(q);
    for (auto [a, b] : circuit.cz_edges) psi.apply_cz(a, b);
    for (std::size_t q = 0; q < circuit.n; ++q) {
        if (circuit.z_flags.get(q)) psi.apply_z(q);
        if (circuit.s_flags.get(q)) psi.apply_s(q);
        if (circuit.h_flags.get(q)) psi.apply_h(q);
    }
    return psi;
}

double pauli_expectation(const StateVector& psi, const PauliOperator& g) {
    if (!g.is_hermitian())
        throw std::invalid_argument("pauli_expectation: operator is not Hermitian");
    StateVector gpsi = psi;
    gpsi.apply_pauli(g);
    return psi.inner(gpsi).real();
}

ProjectResult project(const StateVector& psi, const PauliOperator& g, int sign) {
    if (!g.is_hermitian())
        throw std::invalid_argument("project: operator is not Hermitian");
    StateVector gpsi = psi;
    gpsi.apply_pauli(g);
    StateVector post = psi;
    for (std::size_t i = 0; i < post.dim(); ++i)
        post.amp(i) = 0.5 * (psi.amp(i) + double(sign) * gpsi.amp(i));
    double nrm = post.norm();
    ProjectResult res;
    res.prob = nrm * nrm;
    if (res.prob > 1e-12) {
        post.normalize();
        res.post = std::move(post);
    }
    return res;
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
    return std::abs(a.inner(b)) >= 1.0 - tol;
}

}  // namespace stabloc
