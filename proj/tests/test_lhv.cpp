#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "stabloc/graph.hpp"
#include "stabloc/lhv.hpp"
#include "stabloc/rng.hpp"
#include "stabloc/tableau.hpp"

using namespace stabloc;

namespace {

StabilizerTableau graph_tableau(std::size_t n,
                                const std::vector<std::pair<int, int>>& edges) {
    StabGraph g(n);
    for (auto [a, b] : edges) g.toggle_edge(std::size_t(a), std::size_t(b));
    return to_tableau(g);
}

StabilizerTableau random_graph_tableau(std::size_t n, CounterRng& rng) {
    StabGraph g(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            if (rng.next_bit()) g.toggle_edge(j, k);
        }
    }
    return to_tableau(g);
}

BitVec bits_of(std::uint64_t code, std::size_t n) {
    BitVec b(n);
    for (std::size_t j = 0; j < n; ++j) b.set(j, (code >> j) & 1);
    return b;
}

LhvTableSpec random_spec(std::size_t n, CounterRng& rng) {
    return LhvTableSpec(n, bits_of(rng.next_u64(), n), bits_of(rng.next_u64(), n));
}

PauliOperator pattern_of(std::uint64_t code, std::size_t n) {
    PauliOperator g = PauliOperator::identity(n);
    for (std::size_t q = 0; q < n; ++q) {
        g.x.set(q, (code >> (2 * q)) & 1);
        g.z.set(q, (code >> (2 * q + 1)) & 1);
    }
    return g;
}

// Feasible range of E[X_1…X_n] over joint ±1 distributions with means a,
// by enumerating basic feasible solutions of the marginal constraints.
bool lp_product_range(const std::vector<double>& a, double& lo, double& hi) {
    std::size_t n = a.size();
    std::size_t atoms = 1u << n;
    std::size_t m = n + 1;  // constraint rows: normalization + n means
    std::vector<std::vector<double>> col(atoms, std::vector<double>(m));
    std::vector<double> obj(atoms);
    for (std::size_t s = 0; s < atoms; ++s) {
        col[s][0] = 1.0;
        double prod = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            double sj = (s >> j) & 1 ? -1.0 : 1.0;
            col[s][j + 1] = sj;
            prod *= sj;
        }
        obj[s] = prod;
    }
    std::vector<double> b(m);
    b[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j) b[j + 1] = a[j];

    lo = 2.0;
    hi = -2.0;
    bool feasible = false;
    std::vector<std::size_t> pick;
    // Enumerate support subsets of size up to m via bitmasks over atoms.
    for (std::size_t mask = 1; mask < (1u << atoms); ++mask) {
        if (std::size_t(std::popcount(mask)) > m) continue;
        pick.clear();
        for (std::size_t s = 0; s < atoms; ++s) {
            if ((mask >> s) & 1) pick.push_back(s);
        }
        std::size_t k = pick.size();
        // Solve the m×k system by Gaussian elimination with consistency check.
        std::vector<std::vector<double>> aug(m, std::vector<double>(k + 1));
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < k; ++c) aug[r][c] = col[pick[c]][r];
            aug[r][k] = b[r];
        }
        std::size_t row = 0;
        std::vector<std::size_t> pivot_row(k, m);
        bool singular = false;
        for (std::size_t c = 0; c < k && row < m; ++c) {
            std::size_t best = row;
            for (std::size_t r = row + 1; r < m; ++r) {
                if (std::abs(aug[r][c]) > std::abs(aug[best][c])) best = r;
            }
            if (std::abs(aug[best][c]) < 1e-12) {
                singular = true;
                break;
            }
            std::swap(aug[best], aug[row]);
            for (std::size_t r = 0; r < m; ++r) {
                if (r == row) continue;
                double f = aug[r][c] / aug[row][c];
                for (std::size_t c2 = c; c2 <= k; ++c2) aug[r][c2] -= f * aug[row][c2];
            }
            pivot_row[c] = row++;
        }
        if (singular) continue;
        bool consistent = true;
        for (std::size_t r = row; r < m; ++r) {
            if (std::abs(aug[r][k]) > 1e-9) consistent = false;
        }
        if (!consistent) continue;
        bool nonneg = true;
        double value = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            double x = aug[pivot_row[c]][k] / aug[pivot_row[c]][c];
            if (x < -1e-9) nonneg = false;
            value += x * obj[pick[c]];
        }
        if (!nonneg) continue;
        feasible = true;
        lo = std::min(lo, value);
        hi = std::max(hi, value);
    }
    return feasible;
}

}  // namespace

TEST_CASE("spec json round-trip and validation") {
    LhvTableSpec spec(3, BitVec(3, {1, 0, 1}), BitVec(3, {0, 1, 0}));
    LhvTableSpec back = LhvTableSpec::from_json(spec.to_json());
    CHECK(back.n == 3);
    CHECK(back.v.to_string() == spec.v.to_string());
    CHECK(back.c.to_string() == spec.c.to_string());
    CHECK_THROWS_AS(LhvTableSpec(2, BitVec(3), BitVec(2)), std::invalid_argument);
}

TEST_CASE("build_instance on the edge graph") {
    StabilizerTableau t = graph_tableau(2, {{0, 1}});
    LhvTableSpec spec(2, BitVec(2), BitVec(2));

    LhvInstance inst = build_instance(spec, t, BitVec(2, {1, 0}));
    CHECK(inst.z == BitVec(2, {1, 0}));
    CHECK(inst.x == BitVec(2, {0, 1}));

    LhvInstance zero = build_instance(spec, t, BitVec(2));
    CHECK(!zero.x.any());
    CHECK(!zero.z.any());
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(instance_value(zero, t.rows[j]) == +1);
    }

    StabilizerTableau not_graph =
        StabilizerTableau::from_text("+ZZ\n+XX");
    CHECK_THROWS_AS(build_instance(spec, not_graph, BitVec(2)),
                    std::invalid_argument);
}

TEST_CASE("instances reproduce the generator values for every dual vector") {
    CounterRng rng(0x11u);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + rng.next_below(3);
        StabilizerTableau t = random_graph_tableau(n, rng);
        LhvTableSpec spec = random_spec(n, rng);
        for (std::uint64_t rc = 0; rc < (1ull << n); ++rc) {
            LhvInstance inst = build_instance(spec, t, bits_of(rc, n));
            for (std::size_t j = 0; j < n; ++j) {
                int expected = spec.v.get(j) ? -1 : +1;
                CHECK(instance_value(inst, t.rows[j]) == expected);
            }
        }
    }
}

TEST_CASE("definite_value equals the instance product for random elements") {
    CounterRng rng(0x12u);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 2 + rng.next_below(4);
        StabilizerTableau t = random_graph_tableau(n, rng);
        LhvTableSpec spec = random_spec(n, rng);
        BitVec a = bits_of(rng.next_u64(), n);
        PauliOperator g = PauliOperator::identity(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (a.get(j)) g = g * t.rows[j];
        }
        PauliOperator pattern = PauliOperator::from_r(g.r());
        LhvInstance inst = build_instance(spec, t, bits_of(rng.next_u64(), n));
        CHECK(definite_value(spec, t, pattern) == instance_value(inst, pattern));
    }
}

TEST_CASE("the all-zero spec values every definite measurement +1") {
    StabilizerTableau t = graph_tableau(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    LhvTableSpec spec(4, BitVec(4), BitVec(4));
    for (std::uint64_t ac = 0; ac < 16; ++ac) {
        BitVec a = bits_of(ac, 4);
        PauliOperator g = PauliOperator::identity(4);
        for (std::size_t j = 0; j < 4; ++j) {
            if (a.get(j)) g = g * t.rows[j];
        }
        CHECK(definite_value(spec, t, PauliOperator::from_r(g.r())) == +1);
    }
    CHECK_THROWS_AS(definite_value(spec, t, PauliOperator::parse("XIII")),
                    std::invalid_argument);
}

TEST_CASE("non-elements flip under a single dual bit") {
    CounterRng rng(0x13u);
    for (int trial = 0; trial < 6; ++trial) {
        std::size_t n = 2 + rng.next_below(3);
        StabilizerTableau t = random_graph_tableau(n, rng);
        LhvTableSpec spec = random_spec(n, rng);
        LhvInstance base = build_instance(spec, t, BitVec(n));
        for (std::uint64_t code = 0; code < (1ull << (2 * n)); ++code) {
            PauliOperator g = pattern_of(code, n);
            if (decompose_element(t, g)) continue;
            bool flips = false;
            for (std::size_t j = 0; j < n && !flips; ++j) {
                BitVec r(n);
                r.set(j, 1);
                LhvInstance flipped = build_instance(spec, t, r);
                flips = instance_value(flipped, g) != instance_value(base, g);
            }
            CHECK(flips);
        }
    }
}

TEST_CASE("standard specs are probability preserving") {
    CounterRng rng(0x14u);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 2 + rng.next_below(3);
        StabilizerTableau t = random_graph_tableau(n, rng);
        PreservationReport rep = is_probability_preserving(random_spec(n, rng), t);
        CHECK(rep.ok);
        CHECK(!rep.witness.has_value());
    }

    StabilizerTableau single = graph_tableau(1, {});
    CHECK(is_probability_preserving(LhvTableSpec(1, BitVec(1, {1}), BitVec(1)),
                                    single)
              .ok);

    StabilizerTableau big = graph_tableau(7, {{0, 1}});
    CHECK_THROWS_AS(is_probability_preserving(LhvTableSpec(7, BitVec(7), BitVec(7)),
                                              big),
                    std::invalid_argument);
}

TEST_CASE("a doctored instance family is rejected with a witness") {
    StabilizerTableau t = graph_tableau(3, {{0, 1}, {1, 2}});
    LhvTableSpec spec(3, BitVec(3), BitVec(3));
    std::vector<LhvInstance> instances;
    for (std::uint64_t rc = 0; rc < 8; ++rc) {
        instances.push_back(build_instance(spec, t, bits_of(rc, 3)));
    }
    instances[3].x.flip(0);
    PreservationReport rep = check_instances(t, instances);
    CHECK(!rep.ok);
    REQUIRE(rep.witness.has_value());
    CHECK((rep.witness->x.any() || rep.witness->z.any()));
}

TEST_CASE("distinct table counts on connected graphs") {
    CHECK(count_distinct_tables(graph_tableau(2, {{0, 1}})) == 8);
    CHECK(count_distinct_tables(graph_tableau(3, {{0, 1}, {1, 2}})) == 32);
    CHECK(count_distinct_tables(graph_tableau(3, {{0, 1}, {1, 2}, {2, 0}})) == 32);
    CHECK_THROWS_AS(count_distinct_tables(graph_tableau(2, {})),
                    std::invalid_argument);
    CHECK_THROWS_AS(count_distinct_tables(graph_tableau(6, {{0, 1}})),
                    std::invalid_argument);
}

TEST_CASE("correlation_range pinned values") {
    Interval i1 = correlation_range({1.0, 0.3});
    CHECK(i1.lo == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(i1.hi == doctest::Approx(0.3).epsilon(1e-9));

    Interval i2 = correlation_range({0.5, 0.5});
    CHECK(i2.lo == doctest::Approx(0.0));
    CHECK(i2.hi == doctest::Approx(1.0));

    Interval i3 = correlation_range({1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(i3.lo == doctest::Approx(-1.0));
    CHECK(i3.hi == doctest::Approx(1.0));

    Interval i4 = correlation_range({-1.0, 0.3});
    CHECK(i4.lo == doctest::Approx(-0.3));
    CHECK(i4.hi == doctest::Approx(-0.3));

    Interval single = correlation_range({0.7});
    CHECK(single.lo == doctest::Approx(0.7));
    CHECK(single.hi == doctest::Approx(0.7));

    CHECK_THROWS_AS(correlation_range({1.5}), std::invalid_argument);
    CHECK_THROWS_AS(correlation_range({}), std::invalid_argument);
}

TEST_CASE("correlation_range matches the joint-distribution LP oracle") {
    std::vector<double> grid;
    for (int g = -4; g <= 4; ++g) grid.push_back(g / 4.0);

    for (double a : grid) {
        for (double b : grid) {
            Interval got = correlation_range({a, b});
            double lo = 0, hi = 0;
            REQUIRE(lp_product_range({a, b}, lo, hi));
            REQUIRE(!got.empty);
            CHECK(got.lo == doctest::Approx(lo).epsilon(1e-9));
            CHECK(got.hi == doctest::Approx(hi).epsilon(1e-9));
        }
    }

    std::vector<double> coarse{-1.0, -0.5, 0.0, 0.5, 1.0};
    for (double a : coarse) {
        for (double b : coarse) {
            for (double c : coarse) {
                Interval got = correlation_range({a, b, c});
                double lo = 0, hi = 0;
                REQUIRE(lp_product_range({a, b, c}, lo, hi));
                REQUIRE(!got.empty);
                CHECK(got.lo == doctest::Approx(lo).epsilon(1e-9));
                CHECK(got.hi == doctest::Approx(hi).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("enlarging a magnitude never enlarges the interval") {
    // Width and lower endpoint are monotone; the upper endpoint alone is
    // not (raising the smallest magnitude can raise it).
    std::vector<double> grid{0.0, 0.25, 0.5, 0.75};
    for (double a : grid) {
        for (double b : grid) {
            for (double c : grid) {
                Interval base = correlation_range({a, b, c});
                for (int j = 0; j < 3; ++j) {
                    std::vector<double> bigger{a, b, c};
                    bigger[std::size_t(j)] += 0.25;
                    Interval shrunk = correlation_range(bigger);
                    REQUIRE(!shrunk.empty);
                    CHECK(shrunk.lo >= base.lo - 1e-9);
                    CHECK(shrunk.hi - shrunk.lo <= base.hi - base.lo + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("nonpauli_check feasibility over the allowed angles") {
    const double pi = std::acos(-1.0);
    CHECK(nonpauli_check(0.0, 0.0));
    CHECK(nonpauli_check(pi / 2, 0.0));
    CHECK(!nonpauli_check(pi / 2, pi / 4));

    // Interior points of the domain are all infeasible.
    double phi = pi / 8;
    double theta_phi = std::atan2(1.0, std::sin(phi));
    CHECK(!nonpauli_check((theta_phi + pi / 2) / 2, phi));
    CHECK(!nonpauli_check(theta_phi, phi));

    CHECK_THROWS_AS(nonpauli_check(0.3, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(nonpauli_check(pi / 2, pi / 3), std::invalid_argument);
    CHECK_THROWS_AS(nonpauli_check(pi / 2, -0.2), std::invalid_argument);
}
