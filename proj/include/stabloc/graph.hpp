#pragma once

// Stabilizer-state graphs: solid/hollow nodes with loops and signs plus an
// ordinary adjacency matrix, together with the full graphical calculus —
// local Clifford rules, CZ rules, equivalence rules, reduction, equivalence
// testing, and Pauli measurements.

#include <optional>
#include <set>
#include <string>

#include "stabloc/circuit.hpp"
#include "stabloc/gf2_core.hpp"
#include "stabloc/pauli.hpp"
#include "stabloc/rng.hpp"
#include "stabloc/tableau.hpp"

namespace stabloc {

struct StabGraph {
    std::size_t n = 0;
    BitVec hollow;   // fill: 1 = hollow, 0 = solid
    BitVec loop;
    BitVec sign;
    BitMatrix adj;   // symmetric, zero diagonal; loops live in `loop`

    StabGraph() = default;
    explicit StabGraph(std::size_t n_)
        : n(n_), hollow(n_), loop(n_), sign(n_), adj(n_, n_) {}

    bool has_edge(std::size_t j, std::size_t k) const { return adj.get(j, k); }
    void toggle_edge(std::size_t j, std::size_t k);
    void set_edge(std::size_t j, std::size_t k, bool present);
    std::vector<std::size_t> neighbors(std::size_t j) const;

    bool is_reduced() const;  // no hollow loops, no hollow–hollow edges

    bool operator==(const StabGraph& other) const = default;

    std::string to_json() const;
    static StabGraph from_json(const std::string& text);
    std::string to_dot() const;
};

enum class LocalGate { H, S, Z };
enum class EquivRule { E1, E2 };

// Edge-set rewrites only; decorations untouched.
StabGraph local_complement(const StabGraph& g, std::size_t node);
StabGraph local_complement_edge(const StabGraph& g, std::size_t j, std::size_t k);

// Transformation rules T1–T4 plus the sign flip for Z.
StabGraph apply_local_gate(const StabGraph& g, LocalGate gate, std::size_t node);

// CZ rules for reduced graphs; non-reduced inputs are reduced first.
StabGraph apply_cz(const StabGraph& g, std::size_t j, std::size_t k);

// E1 requires a loop on `node`; E2 requires j,k connected and loopless.
StabGraph apply_equiv_e1(const StabGraph& g, std::size_t node);
StabGraph apply_equiv_e2(const StabGraph& g, std::size_t j, std::size_t k);

// State-preserving conversion to reduced form. Deterministic: lowest-index
// hollow node first; E2 partner is its lowest-index eligible neighbor.
StabGraph reduce(const StabGraph& g);

// True iff the two graphs represent the same state (reduce, align hollow
// nodes with the reduced equivalence rules, compare identically).
bool equivalent(const StabGraph& g1, const StabGraph& g2);

struct MeasuredSets {
    std::set<std::size_t> M_set, M_S, M_H, M_SE;
    std::size_t b = 0;  // |M_H ∩ signed nodes|
};

struct GraphMeasureResult {
    int outcome_bit = 0;
    double probability = 1.0;
    StabGraph post;
    MeasuredSets sets;  // as classified after the simplification stage
};

// Pauli-product measurement; M Hermitian with sign +1.
GraphMeasureResult measure_product(const StabGraph& g, const PauliOperator& M,
                                   std::optional<int> forced, CounterRng& rng);

// Single-qubit measurement via the per-configuration shortcut analysis.
GraphMeasureResult measure_single(const StabGraph& g, std::size_t node, char basis,
                                  std::optional<int> forced, CounterRng& rng);

GraphCircuit to_circuit(const StabGraph& g);
StabGraph from_circuit(const GraphCircuit& c);

StabilizerTableau to_tableau(const StabGraph& g);
StabGraph from_tableau(const StabilizerTableau& t);

}  // namespace stabloc
