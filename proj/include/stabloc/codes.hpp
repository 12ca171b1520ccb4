#pragma once

// Graphical stabilizer codes: canonical code graphs with logical-input
// bookkeeping, basis-state generator sets, and statevector encoding via the
// coupled-input / X-measurement / logical-Z correction circuit.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabloc/graph.hpp"
#include "stabloc/oracle.hpp"
#include "stabloc/tableau.hpp"

namespace stabloc {

struct CodeGraph {
    // Plain signed graph (all nodes solid, no loops) whose state is the
    // encoded |0…0⟩; its generators are the canonical g'_j(0…0).
    StabGraph base;
    std::size_t k = 0;
    // input_edges(l, j) = 1 iff logical input l enters canonical generator j,
    // i.e. flipping logical bit c_l flips the sign of generator j.
    BitMatrix input_edges;
    // Logical Z operators rewritten to commute with the bookkeeping above
    // (kept verbatim from the input; used for encoding corrections).
    std::vector<PauliOperator> logical_zs;
    // Original stabilizer generators, kept for serialization round-trips.
    std::vector<PauliOperator> stabilizers;

    std::size_t n() const { return base.n; }

    std::string to_json() const;
    static CodeGraph from_json(const std::string& text);
};

// Canonicalize {gens ∪ logical_zs} (n−k + k = n commuting independent
// Hermitian operators) into graph form and record which logical Z rows were
// consumed by each canonical generator.
CodeGraph build_code_graph(const std::vector<PauliOperator>& gens,
                           const std::vector<PauliOperator>& logical_zs);

// Generators of the encoded basis state |c̄⟩: the base generators with signs
// multiplied by (−1)^{b(j)·c}.
StabilizerTableau basis_generators(const CodeGraph& cg, const BitVec& c);

// Encode Σ_c α_c |c̄⟩ by coupling a k-qubit input register holding α to the
// base graph with CZ gates along input_edges, measuring the inputs in the X
// basis, and correcting with (Z̄_l)^{x_l}. The result is independent of the
// measurement record; `forced_record` pins it for tests, otherwise the seed
// drives the (uniformly random) record.
StateVector encode_state(const CodeGraph& cg,
                         const std::vector<std::complex<double>>& amplitudes,
                         std::uint64_t seed,
                         const std::optional<BitVec>& forced_record = std::nullopt);

}  // namespace stabloc
