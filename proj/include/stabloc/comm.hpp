#pragma once

// Communication-assisted local-hidden-variable models on graph states:
// definite-submeasurement classification, the site-invariant nearest-neighbor
// model, graph families on which that model is exact, a site-invariant model
// for linear chains, a universal (special-party) model, and symbolic
// verifiers for the known impossibility arguments.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabloc/gf2_core.hpp"
#include "stabloc/rng.hpp"

namespace stabloc {

// A Pauli letter per node plus a submeasurement selector e: node j's result
// is part of the tracked product iff mask bit j is set. The mask defaults to
// all-ones (the global measurement).
struct MeasurementAssignment {
    std::size_t n = 0;
    std::string letters;  // one of I, X, Y, Z per node
    BitVec mask;

    MeasurementAssignment() = default;
    explicit MeasurementAssignment(std::string measurement);
    MeasurementAssignment(std::string measurement, BitVec mask_bits);

    BitVec r1() const;  // 1 where the letter is X or Y
    BitVec r2() const;  // 1 where the letter is Y or Z

    std::string to_json() const;  // {"measurement": ..., "mask": [bits]}
    static MeasurementAssignment from_json(const std::string& text);
};

// Combined document {graph: [adjacency rows], measurement, mask}.
std::string assignment_to_json(const BitMatrix& gamma,
                               const MeasurementAssignment& a);
std::pair<BitMatrix, MeasurementAssignment> assignment_from_json(
    const std::string& text);

// One execution of a communication model on a fixed hidden-variable draw.
struct ModelRun {
    std::vector<int> outputs;  // m_j in {+1, -1}
    BitVec b;                  // bits broadcast by each site
    std::vector<int> t;        // per-site tallies of received bits
    std::size_t bits_communicated = 0;

    int product() const;                    // over all sites
    int product(const BitVec& mask) const;  // over selected sites
};

enum class SubMeasurementKind { definite, random };

// Throws std::invalid_argument unless gamma is symmetric with zero diagonal.
void require_adjacency(const BitMatrix& gamma);

// A submeasurement is definite exactly when the masked letters form (up to
// sign) a stabilizer element of the graph state.
SubMeasurementKind classify_submeasurement(const BitMatrix& gamma,
                                           const MeasurementAssignment& a);

// Exact quantum sign (+1 or -1) of a definite submeasurement; rejects
// random submeasurements.
int qm_sub_sign(const BitMatrix& gamma, const MeasurementAssignment& a);

// Site-invariant nearest-neighbor model over the v = 0, c = 0 table.
// Each site broadcasts b_j = 1 iff it measures X or Y; a site measuring X
// or Y flips its table entry when the tally t_j is 2 or 3 mod 4. The
// variant flag swaps in the alternative flip sets (X on 1,2; Y on 0,3),
// which agrees on global measurements but differs on submeasurements.
// When r is absent the hidden bits are drawn from CounterRng(seed).
ModelRun nn_run(const BitMatrix& gamma, const MeasurementAssignment& a,
                std::optional<BitVec> r = std::nullopt,
                std::uint64_t seed = 0, bool variant = false);

// Deterministic part of the nn model's answer for a definite
// submeasurement: the masked product of outputs, which is independent of
// the hidden bits. May disagree with qm_sub_sign on general graphs.
int nn_sub_prediction(const BitMatrix& gamma, const MeasurementAssignment& a);

// Graph builders (adjacency matrices).
BitMatrix chain_graph(std::size_t n);
BitMatrix ring_graph(std::size_t n);
// rows x cols grid, row-major node numbering.
BitMatrix grid_graph(std::size_t rows, std::size_t cols);
BitMatrix complete_bipartite_graph(std::size_t p, std::size_t q);
// Complete graph on n nodes with the complete graph on the last b_size
// nodes removed (the symmetric difference of K_n and K_{b_size}).
BitMatrix symmetric_difference_graph(std::size_t n, std::size_t b_size);

struct ClassViolation {
    std::string measurement;
    BitVec mask;
    int model = 0;
    int qm = 0;
};

struct ClassReport {
    std::string family;
    std::size_t n = 0;
    std::size_t checked = 0;  // definite (measurement, mask) pairs examined
    std::vector<ClassViolation> violations;

    std::string to_json() const;
};

// Exhaustively compares nn_sub_prediction with qm_sub_sign over every
// measurement and every definite mask on one graph (n <= 8).
ClassReport verify_graph(const BitMatrix& gamma, std::string family_label);

// Sweeps a whole family up to n_max nodes. Families: "complete_bipartite"
// (all K_{p,q} with p <= q, p + q <= n_max), "symmetric_difference" (all
// (n, b) with n <= n_max), and the control case "cluster2x3" which is
// expected to report violations. The member graphs are independent, so
// jobs > 1 checks them on that many threads; the report order is fixed.
std::vector<ClassReport> verify_class(const std::string& family,
                                      std::size_t n_max, std::size_t jobs = 1);

// Site-invariant model for linear chains with unlimited-range broadcast:
// every site measuring X or Z broadcasts its letter, and a site measuring X
// flips its table entry iff it sits at the exact middle of an odd run of
// X's flanked by Y's on both sides. Rejects non-chain adjacencies. In the
// returned run, b marks the broadcasting sites and t_j = 1 marks a flip.
ModelRun chain_run(const BitMatrix& gamma, const MeasurementAssignment& a,
                   std::optional<BitVec> r = std::nullopt,
                   std::uint64_t seed = 0);

// Universal model: every site reports its letter to a special party, which
// lists the definite submeasurements (the mod-2 nullspace of the matrix
// with entries Gamma_jk [r1]_k + [r2]_j delta_jk), picks the echelon basis,
// and for each basis vector whose quantum sign is -1 sends one bit to the
// node owned by that vector alone. Correct for every definite
// submeasurement on every graph. t_j = 1 marks a corrected site.
ModelRun universal_run(const BitMatrix& gamma, const MeasurementAssignment& a,
                       std::optional<BitVec> r = std::nullopt,
                       std::uint64_t seed = 0);

struct CounterexampleReport {
    bool contradiction = false;
    std::size_t constraints = 0;
    int product = 0;      // residual sign after all model variables cancel
    std::string details;  // e.g. "16 constraints, product = -1"

    std::string to_json() const;
};

// Symbolic impossibility verifiers. Each case derives a set of parity
// constraints on uninterpreted per-site model variables, multiplies them,
// and reports a contradiction when every variable cancels yet the signs
// multiply to -1. Cases: "ghz", "cluster2x3", "chain11", "ring" (f = 1).
CounterexampleReport verify_counterexample(const std::string& name);
// Ring impossibility for n = 12f nodes and communication distance 2f - 1;
// f must be odd and positive.
CounterexampleReport verify_counterexample_ring(std::size_t f);

}  // namespace stabloc
