#include <doctest.h>

#include <cmath>

#include "stabloc/oracle.hpp"
#include "stabloc/rng.hpp"

using namespace stabloc;

namespace {
constexpr double kTol = 1e-12;

bool close(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) < 1e-9;
}
}  // namespace

TEST_CASE("gates act on the expected amplitudes") {
    StateVector psi(2);  // |00>
    psi.apply_h(0);      // (|00> + |10>)/sqrt(2); qubit 0 is the MSB
    CHECK(close(psi.amp(0), 1 / std::sqrt(2.0)));
    CHECK(close(psi.amp(2), 1 / std::sqrt(2.0)));
    CHECK(close(psi.amp(1), 0.0));

    psi.apply_cz(0, 1);
    psi.apply_x(1);  // (|01> + i^0|11>)/sqrt(2) with CZ trivial on |x0>
    CHECK(close(psi.amp(1), 1 / std::sqrt(2.0)));
    CHECK(close(psi.amp(3), 1 / std::sqrt(2.0)));

    psi.apply_cz(0, 1);  // |11> picks up -1
    CHECK(close(psi.amp(3), -1 / std::sqrt(2.0)));

    psi.apply_s(1);  // phase i on every |x1>
    CHECK(close(psi.amp(1), std::complex<double>(0, 1) / std::sqrt(2.0)));
    CHECK(close(psi.amp(3), std::complex<double>(0, -1) / std::sqrt(2.0)));

    psi.apply_z(0);  // -1 on |1x>
    CHECK(close(psi.amp(3), std::complex<double>(0, 1) / std::sqrt(2.0)));
}

TEST_CASE("apply_pauli includes the group phase") {
    StateVector psi(1);
    psi.apply_pauli(PauliOperator::parse("Y"));  // Y|0> = i|1>
    CHECK(close(psi.amp(0), 0.0));
    CHECK(close(psi.amp(1), std::complex<double>(0, 1)));

    StateVector phi(1);
    phi.apply_pauli(PauliOperator::parse("-iY"));  // -iY|0> = |1>
    CHECK(close(phi.amp(1), 1.0));
}

TEST_CASE("expectation on a Bell state") {
    StateVector psi(2);
    psi.apply_h(0);
    psi.apply_h(1);
    psi.apply_cz(0, 1);
    psi.apply_h(1);  // CNOT(0->1) on |+0>: Bell state (|00>+|11>)/sqrt(2)
    CHECK(pauli_expectation(psi, PauliOperator::parse("XX")) == doctest::Approx(1.0));
    CHECK(pauli_expectation(psi, PauliOperator::parse("ZZ")) == doctest::Approx(1.0));
    CHECK(pauli_expectation(psi, PauliOperator::parse("YY")) == doctest::Approx(-1.0));
    CHECK(pauli_expectation(psi, PauliOperator::parse("ZI")) == doctest::Approx(0.0));
    CHECK_THROWS(pauli_expectation(psi, PauliOperator::parse("iXX")));
}

TEST_CASE("projection splits the Bell state") {
    StateVector psi(2);
    psi.apply_h(0);
    psi.apply_h(1);
    psi.apply_cz(0, 1);
    psi.apply_h(1);
    ProjectResult up = project(psi, PauliOperator::parse("ZI"), +1);
    CHECK(up.prob == doctest::Approx(0.5));
    REQUIRE(up.post.has_value());
    CHECK(close(up.post->amp(0), 1.0));

    ProjectResult sure = project(psi, PauliOperator::parse("XX"), +1);
    CHECK(sure.prob == doctest::Approx(1.0));
    ProjectResult never = project(psi, PauliOperator::parse("XX"), -1);
    CHECK(never.prob == doctest::Approx(0.0));
    CHECK_FALSE(never.post.has_value());
}

TEST_CASE("run_circuit layer order") {
    GraphCircuit c(2);
    c.cz_edges.push_back({0, 1});
    c.h_flags.set(1, true);
    StateVector psi = run_circuit(c);
    // H⊗H|00>, CZ, then H on qubit 1: CNOT-like state (|00>+|11>)/sqrt(2).
    CHECK(pauli_expectation(psi, PauliOperator::parse("ZZ")) == doctest::Approx(1.0));
    CHECK(pauli_expectation(psi, PauliOperator::parse("XX")) == doctest::Approx(1.0));
}

TEST_CASE("equal_up_to_phase") {
    StateVector a(1), b(1);
    a.apply_h(0);
    b.apply_h(0);
    b.apply_z(0);
    CHECK_FALSE(equal_up_to_phase(a, b));
    b.apply_x(0);
    b.apply_z(0);  // ZXZ·H|0> = -|+>
    CHECK(equal_up_to_phase(a, b));
    CHECK(std::abs(a.inner(b) + 1.0) < kTol);
}

TEST_CASE("norm is preserved by random circuits") {
    CounterRng rng(3);
    StateVector psi(3);
    for (int step = 0; step < 50; ++step) {
        std::size_t q = rng.next_below(3);
        switch (rng.next_below(5)) {
            case 0: psi.apply_h(q); break;
            case 1: psi.apply_s(q); break;
            case 2: psi.apply_z(q); break;
            case 3: psi.apply_x(q); break;
            default: psi.apply_cz(q, (q + 1) % 3); break;
        }
    }
    CHECK(psi.norm() == doctest::Approx(1.0));
}
