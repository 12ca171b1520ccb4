#pragma once

// Local-hidden-variable tables for Pauli measurements on graph states:
// closed-form table specs, sampled instances, definite-measurement values,
// probability-preservation checks, table counting, and the correlation
// range of products of ±1 random variables with prescribed means.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stabloc/gf2_core.hpp"
#include "stabloc/pauli.hpp"
#include "stabloc/tableau.hpp"

namespace stabloc {

// A table in closed form: v_j is the value bit assigned to generator j
// ((-1)^{v_j}); c_k is the X·Y·Z correlation bit at site k (the Y entry at
// site k is (-1)^{x_k + z_k + c_k}).
struct LhvTableSpec {
    std::size_t n = 0;
    BitVec v;
    BitVec c;

    LhvTableSpec() = default;
    LhvTableSpec(std::size_t n_, BitVec v_, BitVec c_);

    std::string to_json() const;
    static LhvTableSpec from_json(const std::string& text);
};

// One materialized instance of a table: per-site X and Z outcome exponent
// bits. The Y outcome at site j is (-1)^{x_j + z_j + c_j}.
struct LhvInstance {
    BitVec x;
    BitVec z;
    BitVec c;
};

// Instance for dual values r: for a graph-form tableau the dual operators
// are the single-site Z's, so z = r and x ≡ rΓ + v (mod 2), with the c
// correction vanishing on the zero-diagonal Γ.
LhvInstance build_instance(const LhvTableSpec& spec, const StabilizerTableau& t,
                           const BitVec& r);

// Product of the instance entries selected by a Hermitian Pauli product
// (the table's prediction for measuring g's sign-free pattern):
// (-1)^{x·r₁(g) + z·r₂(g) + c·(r₁(g)∧r₂(g))}.
int instance_value(const LhvInstance& inst, const PauliOperator& g);

// Closed-form value (-1)^{v_g} the table assigns to the definite measurement
// sign(g)·g, where g = ±g₁^{a₁}…g_n^{aₙ}: v_g ≡ a·v + Σ_{j,k} a_j c_j Γ_jk a_k
// (mod 2). Throws if g is not a stabilizer element of t.
int definite_value(const LhvTableSpec& spec, const StabilizerTableau& t,
                   const PauliOperator& g);

struct PreservationReport {
    bool ok = true;
    // A Hermitian +1-sign Pauli product whose values break the requirement:
    // a stabilizer element whose value varies across instances, or a
    // non-element whose values are not balanced.
    std::optional<PauliOperator> witness;
};

// Checks a full family of instances (one per dual vector r, in counting
// order) against the tableau: stabilizer elements must take one fixed value
// on every instance, non-elements must be +1 on exactly half the instances.
PreservationReport check_instances(const StabilizerTableau& t,
                                   const std::vector<LhvInstance>& instances);

// check_instances over the 2ⁿ instances generated by spec. Always true for
// a standard spec; n > 6 is refused (4ⁿ·2ⁿ enumeration).
PreservationReport is_probability_preserving(const LhvTableSpec& spec,
                                             const StabilizerTableau& t);

// Number of distinct definite-value assignments over all 2^{2n} (v, c)
// specs, deduped on the full value vector over all stabilizer elements.
// Requires a connected graph and n ≤ 5; equals 2^{2n-1}.
std::uint64_t count_distinct_tables(const StabilizerTableau& t);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = false;

    bool contains(double p, double tol = 1e-9) const {
        return !empty && p >= lo - tol && p <= hi + tol;
    }
};

// Exact achievable set of p with R(a₁)·…·R(aₙ) = R(p): sort by |a|
// descending, apply the n-variable bounds to (Π sign a_j)·p, intersect with
// [-1, 1]. Endpoint tolerance 1e-9; inputs must lie in [-1, 1].
Interval correlation_range(std::vector<double> a);

// Feasibility of a local table for the non-Pauli direction (θ, φ):
// T(θ,φ)·T(θ,-φ) must behave like a Z measurement whose individual outcome
// is unbiased, i.e. 0 ∈ correlation_range(sinθ·cosφ, sinθ·sinφ). The domain
// is 0 ≤ φ ≤ π/4 with θ_φ ≤ θ ≤ π/2 (cos θ_φ = sin θ_φ sin φ), plus the
// θ = φ = 0 corner; out-of-domain angles throw.
bool nonpauli_check(double theta, double phi);

}  // namespace stabloc
