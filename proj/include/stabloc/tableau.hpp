#pragma once

// Stabilizer states as lists of Hermitian Pauli generators with signs:
// validation, canonical graph form, element decomposition, exact signs,
// Clifford conjugation, and Pauli measurement.

#include <optional>
#include <string>
#include <vector>

#include "stabloc/gf2_core.hpp"
#include "stabloc/pauli.hpp"
#include "stabloc/rng.hpp"

namespace stabloc {

enum class CliffordGate { H, S, Sdg, Z, X, CZ };

struct LocalOp {
    CliffordGate gate;  // H or S
    std::size_t qubit;
};

struct StabilizerTableau {
    std::size_t n = 0;
    std::vector<PauliOperator> rows;  // all Hermitian (phase 0 or 2)

    StabilizerTableau() = default;
    explicit StabilizerTableau(std::vector<PauliOperator> rows_);

    // G as an n×2n matrix, rows r(g_j) = (x | z).
    BitMatrix generator_matrix() const;
    // Sign bits: s_j = 1 iff row j carries sign -1.
    BitVec sign_bits() const;

    // True when G = (I | Γ) with Γ symmetric and zero diagonal.
    bool is_graph_form() const;
    // For graph-form tableaus, the adjacency Γ (right half).
    BitMatrix graph_adjacency() const;

    bool operator==(const StabilizerTableau& other) const = default;

    std::string to_text() const;
    static StabilizerTableau from_text(const std::string& text);
    std::string to_json() const;
    static StabilizerTableau from_json(const std::string& text);
};

struct ValidationReport {
    bool ok = true;
    std::string message;  // names the failing row pair or the rank defect
};

ValidationReport validate(const StabilizerTableau& t);

struct GraphFormResult {
    StabilizerTableau tableau;  // in graph form (I | Γ), Γ zero diagonal
    // Applying these gates, in list order, to the graph-form state
    // reproduces the input state up to global phase.
    std::vector<LocalOp> local_ops;
    // row_coeffs(j, i) = 1 iff output row j is (up to sign) a product
    // including input row i. Invertible over GF(2).
    BitMatrix row_coeffs;
};

GraphFormResult to_graph_form(const StabilizerTableau& t);

// Canonical dual generator matrix for a graph-form tableau: H = (0 | I),
// satisfying G Λ Hᵀ ≡ I and H Λ Hᵀ ≡ 0 (mod 2).
struct DualGenerators {
    BitMatrix H;  // n×2n
};
DualGenerators dual_generators(const StabilizerTableau& graph_form);

// a with g = ±g₁^{a₁}…g_n^{a_n}; nullopt when g is not (±) a stabilizer
// element. Requires a graph-form tableau (a = r(g) Λ Hᵀ = r₁(g)).
std::optional<BitVec> decompose_element(const StabilizerTableau& graph_form,
                                        const PauliOperator& g);

// Exact sign of g' = g₁^{a₁}…g_n^{a_n}, including the generators' own signs.
// Works on any valid tableau.
int element_sign(const StabilizerTableau& t, const BitVec& a);

struct MeasureResult {
    int outcome_bit = 0;      // measured value is (-1)^outcome_bit
    double probability = 1.0; // 1 for definite outcomes, 0.5 for random ones
    StabilizerTableau post;
};

// Measurement of a Hermitian Pauli product with leading sign +1. `forced`
// (0 or 1) is honored only when the outcome is random.
MeasureResult measure(const StabilizerTableau& t, const PauliOperator& M,
                      std::optional<int> forced, CounterRng& rng);

// Conjugate a single Pauli operator by a Clifford generator, in place,
// tracking the exact phase: g → U g U†.
void conjugate_pauli(PauliOperator& g, CliffordGate gate, std::size_t q,
                     std::size_t r = 0);

StabilizerTableau conjugate_clifford(const StabilizerTableau& t, CliffordGate gate,
                                     std::size_t q, std::size_t r = 0);

}  // namespace stabloc
