#pragma once

// n-qubit Pauli group elements in the binary-symplectic representation:
//   g = i^phase · i^{x·zᵀ} · ⊗_j X^{x_j} Z^{z_j},
// so that phase = 0 with any (x, z) is a plain tensor product of I, X, Y, Z.
// g is Hermitian exactly when phase is even; sign(g) = (-1)^{phase/2} then.

#include <cstdint>
#include <string>

#include "stabloc/gf2_core.hpp"

namespace stabloc {

struct PauliOperator {
    std::size_t n = 0;
    int phase = 0;  // exponent of i, modulo 4
    BitVec x;
    BitVec z;

    PauliOperator() = default;
    explicit PauliOperator(std::size_t n_) : n(n_), x(n_), z(n_) {}

    static PauliOperator identity(std::size_t n) { return PauliOperator(n); }

    bool is_hermitian() const { return phase % 2 == 0; }
    // For Hermitian operators: +1 or -1.
    int sign() const { return phase % 4 == 0 ? +1 : -1; }

    // Letter at qubit j as if phase were 0: one of 'I', 'X', 'Y', 'Z'.
    char letter(std::size_t j) const;
    void set_letter(std::size_t j, char letter);

    // Concatenation (x | z) as a length-2n vector.
    BitVec r() const;
    static PauliOperator from_r(const BitVec& r, int phase = 0);

    bool commutes(const PauliOperator& other) const;

    PauliOperator operator*(const PauliOperator& other) const;

    bool operator==(const PauliOperator& other) const = default;

    // "+XYZ", "-IZ", "+iXY", "-iY", ... Hermitian operators print "+"/"-";
    // anti-Hermitian ones print "+i"/"-i". Round-trips through parse().
    std::string to_string() const;

    // Accepts an optional sign prefix (+, -, +i, -i, i) followed by one
    // letter from {I, X, Y, Z} per qubit. Throws std::invalid_argument with
    // the offending character index on bad input.
    static PauliOperator parse(const std::string& text);
};

}  // namespace stabloc
