#pragma once

// Fixed-shape preparation circuit for graph-form stabilizer states:
//   |0⟩^⊗n → H on every qubit → CZ on each listed edge
//          → per-qubit Z (z_flags), then S (s_flags), then H (h_flags).
// The per-qubit layers apply in that order on each qubit.

#include <cstddef>
#include <utility>
#include <vector>

#include "stabloc/gf2_core.hpp"

namespace stabloc {

struct GraphCircuit {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> cz_edges;
    BitVec z_flags;
    BitVec s_flags;
    BitVec h_flags;

    GraphCircuit() = default;
    explicit GraphCircuit(std::size_t n_)
        : n(n_), z_flags(n_), s_flags(n_), h_flags(n_) {}
};

}  // namespace stabloc
