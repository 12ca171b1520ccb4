#pragma once

// Local-realism feasibility by exact-rational linear programming, Bell
// inequality extraction from the dual, random-variable Bell inequalities,
// and bipartite state algebra for the generalized no-signaling theory.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace stabloc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

// Nearest rational with a 2^62 denominator; exact for exact doubles.
Rational rational_approx(double x);
double to_double(const Rational& r);

// Correlations indexed by per-party setting tuples (entry 0 = identity,
// entries 1..m_p = that party's settings), in lexicographic order with the
// first party most significant. Index 0 is the all-identity entry (= 1).
struct CorrelationVector {
    std::vector<std::size_t> settings;  // measurements per party
    std::vector<Rational> values;       // size = Π (settings_p + 1)

    CorrelationVector() = default;
    explicit CorrelationVector(std::vector<std::size_t> settings_);

    std::size_t index_count() const;
    std::size_t index_of(const std::vector<std::size_t>& tuple) const;
    std::vector<std::size_t> tuple_of(std::size_t index) const;

    void set(const std::vector<std::size_t>& tuple, const Rational& value);
    const Rational& at(const std::vector<std::size_t>& tuple) const;

    // Throws unless the identity entry is 1 and every value is in [-1, 1].
    void validate() const;

    std::string to_csv() const;
    static CorrelationVector from_csv(const std::string& text);
};

// Deterministic-strategy matrix: one ±1 column per joint assignment of
// outcomes to every (party, setting). Strategy s assigns setting i of party
// p the outcome -1 iff bit Σ_{q<p} settings_q + i of s is set; row values
// are products of the assigned outcomes over the tuple's non-identity
// entries (first row, the identity tuple, is all ones).
struct StrategyMatrix {
    std::vector<std::size_t> settings;
    std::size_t rows = 0;
    std::size_t cols = 0;

    int entry(std::size_t row, std::size_t col) const;
};

// Total strategy count is capped at 2^20.
StrategyMatrix strategy_matrix(const std::vector<std::size_t>& settings);

// q·C̃ ≤ bound over the non-identity correlation entries, with bound equal
// to the exact maximum of q·column over all deterministic strategies.
struct BellInequality {
    std::vector<std::size_t> settings;
    std::vector<BigInt> coeffs;  // indexed like CorrelationVector, coeffs[0] unused (0)
    BigInt bound = 0;

    std::string to_json() const;
    static BellInequality from_json(const std::string& text);
};

struct LpResult {
    bool feasible = false;
    // Feasible: nonnegative weights over strategy columns, summing to 1,
    // with (strategy matrix)·weights = C exactly.
    std::vector<Rational> weights;
    // Infeasible: a gcd-reduced inequality violated by C.
    std::optional<BellInequality> inequality;
};

// Exact-rational phase-1 simplex (Bland's rule) for M·P = C, P ≥ 0; the
// infeasibility certificate is read off the terminal dual and re-verified
// both exactly per column and in floating point with 1e-9 margin.
LpResult lp_feasible(const CorrelationVector& C);

// Σ_{j<m} |⟨M_j⟩| − (Π_j sign⟨M_j⟩)|⟨M_m⟩| ≤ m − 2, the distinguished
// observable last.
struct RvInequality {
    std::vector<std::size_t> settings;
    std::vector<std::vector<std::size_t>> observables;
    int bound = 0;  // m − 2
};

// One inequality per choice of distinguished observable. Every non-identity
// (party, setting) must occur an even number of times across the
// observables; violations are rejected naming the odd one.
std::vector<RvInequality> rv_inequalities(
    const std::vector<std::size_t>& settings,
    const std::vector<std::vector<std::size_t>>& observables);

// lhs and satisfaction; exact rationals for BellInequality, floating point
// with 1e-12 slack for RvInequality (absolute values are not rational-safe
// decisions when signs sit at zero).
std::pair<Rational, bool> evaluate_inequality(const BellInequality& ineq,
                                              const CorrelationVector& C);
std::pair<double, bool> evaluate_inequality(const RvInequality& ineq,
                                            const CorrelationVector& C);

// A state in the generalized no-signaling theory, stored by coefficients:
// single system P = ½Σ(n_j + b_j m_j); bipartite per-system marginals a, b
// and correlations c_{jk} with |a_j + b_k| − 1 ≤ c_{jk} ≤ 1 − |a_j − b_k|.
struct GptState {
    std::size_t M = 0;  // fiducial measurements per system
    bool bipartite = false;
    std::vector<double> a;  // bipartite: Alice marginals; single: unused
    std::vector<double> b;  // Bob / single-system coefficients
    std::vector<double> c;  // M×M row-major, bipartite only

    double& c_at(std::size_t j, std::size_t k) { return c[j * M + k]; }
    double c_at(std::size_t j, std::size_t k) const { return c[j * M + k]; }

    // The raw 4M² fiducial probability vector (bipartite states).
    std::vector<double> probability_vector() const;
};

GptState gpt_single(std::vector<double> b);
GptState gpt_make_bipartite(std::size_t M, std::vector<double> a,
                            std::vector<double> b, std::vector<double> c);
// a = b = 0 with c = (1,1,1,−1) on the first two measurements (zeros
// elsewhere), and the same damped by 1/√2.
GptState gpt_pr_preset(std::size_t M = 2);
GptState gpt_bell_preset(std::size_t M = 2);

// Alice's reduced state (I ⊗ n_kᵀ)P, independent of k.
GptState gpt_reduce(const GptState& state);
// c_{jk} = (m_j ⊗ m_k)ᵀ P.
double gpt_correlation(const GptState& state, std::size_t j, std::size_t k);

}  // namespace stabloc
