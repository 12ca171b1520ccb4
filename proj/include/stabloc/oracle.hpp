#pragma once

// Brute-force statevector simulator used as an independent reference for the
// stabilizer machinery. Deliberately simple; capped at 12 qubits.

#include <complex>
#include <optional>
#include <vector>

#include "stabloc/circuit.hpp"
#include "stabloc/pauli.hpp"

namespace stabloc {

class StateVector {
public:
    static constexpr std::size_t kMaxQubits = 12;

    StateVector() = default;
    // |0...0⟩ on n qubits.
    explicit StateVector(std::size_t n);

    std::size_t num_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    std::complex<double>& amp(std::size_t i) { return amps_[i]; }
    const std::complex<double>& amp(std::size_t i) const { return amps_[i]; }

    // Qubit 0 is the leftmost tensor factor (most significant index bit).
    void apply_h(std::size_t q);
    void apply_s(std::size_t q);
    void apply_z(std::size_t q);
    void apply_x(std::size_t q);
    void apply_cz(std::size_t a, std::size_t b);

    // Multiplies by the full group element, including its phase.
    void apply_pauli(const PauliOperator& g);

    double norm() const;
    void normalize();

    std::complex<double> inner(const StateVector& other) const;

private:
    std::size_t bit(std::size_t q) const { return n_ - 1 - q; }
    std::size_t n_ = 0;
    std::vector<std::complex<double>> amps_;
};

StateVector run_circuit(const GraphCircuit& circuit);

// ⟨ψ|g|ψ⟩ for a Hermitian Pauli group element.
double pauli_expectation(const StateVector& psi, const PauliOperator& g);

struct ProjectResult {
    double prob = 0.0;                 // ⟨ψ| (I + s·g)/2 |ψ⟩
    std::optional<StateVector> post;   // normalized; absent if prob ≤ 1e-12
};

// Project onto the outcome-`sign` eigenspace of a Hermitian Pauli element.
ProjectResult project(const StateVector& psi, const PauliOperator& g, int sign);

// True when |⟨a|b⟩| ≥ 1 - tol for unit vectors a, b.
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = 1e-9);

}  // namespace stabloc
