#include <doctest.h>

#include <cmath>
#include <vector>

#include "stabloc/bell.hpp"
#include "stabloc/rng.hpp"

using namespace stabloc;

namespace {

// 2-party, 2-setting vector with zero marginals and the four products set.
CorrelationVector two_by_two(double c11, double c12, double c21, double c22) {
    CorrelationVector C({2, 2});
    C.set({1, 1}, rational_approx(c11));
    C.set({1, 2}, rational_approx(c12));
    C.set({2, 1}, rational_approx(c21));
    C.set({2, 2}, rational_approx(c22));
    return C;
}

CorrelationVector column_vector(const StrategyMatrix& M, std::size_t col) {
    CorrelationVector C(M.settings);
    for (std::size_t i = 0; i < M.rows; ++i) {
        C.values[i] = Rational(M.entry(i, col));
    }
    return C;
}

}  // namespace

TEST_CASE("strategy matrix shapes and ordering") {
    StrategyMatrix tiny = strategy_matrix({1});
    CHECK(tiny.rows == 2);
    CHECK(tiny.cols == 2);
    CHECK(tiny.entry(0, 0) == 1);
    CHECK(tiny.entry(0, 1) == 1);
    CHECK(tiny.entry(1, 0) == 1);
    CHECK(tiny.entry(1, 1) == -1);

    StrategyMatrix M = strategy_matrix({2, 2});
    CHECK(M.rows == 9);
    CHECK(M.cols == 16);
    for (std::size_t s = 0; s < M.cols; ++s) {
        CHECK(M.entry(0, s) == 1);  // identity row
    }

    // Product entries factor into marginals under every strategy.
    CorrelationVector shape({2, 2});
    for (std::size_t s = 0; s < M.cols; ++s) {
        for (std::size_t ja = 1; ja <= 2; ++ja) {
            for (std::size_t jb = 1; jb <= 2; ++jb) {
                int prod = M.entry(shape.index_of({ja, jb}), s);
                int a = M.entry(shape.index_of({ja, 0}), s);
                int b = M.entry(shape.index_of({0, jb}), s);
                CHECK(prod == a * b);
            }
        }
    }

    CHECK_THROWS_AS(strategy_matrix({21}), std::invalid_argument);
}

TEST_CASE("correlation vector indexing and csv round-trip") {
    CorrelationVector C({2, 1});
    CHECK(C.index_count() == 6);
    CHECK(C.index_of({0, 0}) == 0);
    CHECK(C.index_of({2, 1}) == 5);
    CHECK(C.tuple_of(4) == std::vector<std::size_t>{2, 0});
    C.set({1, 1}, Rational(1, 2));
    C.set({2, 1}, Rational(-1, 3));

    CorrelationVector back = CorrelationVector::from_csv(C.to_csv());
    CHECK(back.settings == C.settings);
    CHECK(back.values == C.values);

    CorrelationVector bad({1});
    bad.values[0] = Rational(2);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("deterministic strategies and their mixtures are feasible") {
    StrategyMatrix M = strategy_matrix({2, 2});
    for (std::size_t s = 0; s < M.cols; ++s) {
        LpResult res = lp_feasible(column_vector(M, s));
        REQUIRE(res.feasible);
        Rational total(0);
        for (const Rational& w : res.weights) total += w;
        CHECK(total == Rational(1));
    }

    CounterRng rng(0x21u);
    for (int trial = 0; trial < 200; ++trial) {
        // Random rational convex combination of a few vertices.
        std::vector<Rational> weights(M.cols, Rational(0));
        Rational total(0);
        for (int pick = 0; pick < 4; ++pick) {
            std::size_t s = rng.next_below(M.cols);
            Rational w(1 + int(rng.next_below(5)), 1);
            weights[s] += w;
            total += w;
        }
        CorrelationVector C(M.settings);
        for (std::size_t i = 0; i < M.rows; ++i) {
            Rational v(0);
            for (std::size_t s = 0; s < M.cols; ++s) {
                if (weights[s] != Rational(0)) {
                    v += weights[s] * Rational(M.entry(i, s));
                }
            }
            C.values[i] = v / total;
        }
        LpResult res = lp_feasible(C);
        REQUIRE(res.feasible);
        // Returned weights reproduce C exactly.
        for (std::size_t i = 0; i < M.rows; ++i) {
            Rational v(0);
            for (std::size_t s = 0; s < M.cols; ++s) {
                if (res.weights[s] != Rational(0)) {
                    v += res.weights[s] * Rational(M.entry(i, s));
                }
            }
            CHECK(v == C.values[i]);
        }
    }
}

TEST_CASE("the Tsirelson point is infeasible with an exact CHSH certificate") {
    double q = 1.0 / std::sqrt(2.0);
    LpResult res = lp_feasible(two_by_two(q, q, q, -q));
    REQUIRE(!res.feasible);
    REQUIRE(res.inequality.has_value());
    const BellInequality& ineq = *res.inequality;
    CHECK(ineq.bound == 2);
    auto [lhs, satisfied] = evaluate_inequality(ineq, two_by_two(q, q, q, -q));
    CHECK(!satisfied);
    CHECK(to_double(lhs) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));

    // Certificate holds for every deterministic strategy.
    StrategyMatrix M = strategy_matrix({2, 2});
    for (std::size_t s = 0; s < M.cols; ++s) {
        auto [value, ok] = evaluate_inequality(ineq, column_vector(M, s));
        CHECK(ok);
        CHECK(value <= Rational(ineq.bound));
    }

    BellInequality back = BellInequality::from_json(ineq.to_json());
    CHECK(back.settings == ineq.settings);
    CHECK(back.coeffs == ineq.coeffs);
    CHECK(back.bound == ineq.bound);
}

TEST_CASE("the PR box violates at exactly 4") {
    LpResult res = lp_feasible(two_by_two(1, 1, 1, -1));
    REQUIRE(!res.feasible);
    auto [lhs, satisfied] =
        evaluate_inequality(*res.inequality, two_by_two(1, 1, 1, -1));
    CHECK(!satisfied);
    CHECK(lhs == Rational(4));
    CHECK(res.inequality->bound == 2);
}

TEST_CASE("a maximizing strategy meets its inequality bound exactly") {
    double q = 1.0 / std::sqrt(2.0);
    LpResult res = lp_feasible(two_by_two(q, q, q, -q));
    REQUIRE(!res.feasible);
    const BellInequality& ineq = *res.inequality;
    StrategyMatrix M = strategy_matrix({2, 2});
    bool met = false;
    for (std::size_t s = 0; s < M.cols; ++s) {
        auto [value, ok] = evaluate_inequality(ineq, column_vector(M, s));
        if (value == Rational(ineq.bound)) met = true;
    }
    CHECK(met);
}

TEST_CASE("random-variable inequalities: construction and parity checks") {
    std::vector<std::vector<std::size_t>> chsh{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    auto ineqs = rv_inequalities({2, 2}, chsh);
    REQUIRE(ineqs.size() == 4);
    for (const RvInequality& ineq : ineqs) {
        CHECK(ineq.bound == 2);
        CHECK(ineq.observables.size() == 4);
    }

    // CHSH form violated at the Tsirelson point.
    double q = 1.0 / std::sqrt(2.0);
    auto [lhs, ok] = evaluate_inequality(ineqs[0], two_by_two(q, q, q, -q));
    CHECK(lhs == doctest::Approx(2 * std::sqrt(2.0)));
    CHECK(!ok);

    // m = 2 identical observables: trivially satisfied.
    auto trivial = rv_inequalities({2, 2}, {{1, 1}, {1, 1}});
    auto [tl, tok] = evaluate_inequality(trivial[0], two_by_two(0.9, 0, 0, 0));
    CHECK(tl == doctest::Approx(0.0));
    CHECK(tok);

    // m = 3 marginal form: |<A⊗I>| + |<I⊗B>| − s|<A⊗B>| ≤ 1.
    auto m3 = rv_inequalities({1, 1}, {{1, 0}, {0, 1}, {1, 1}});
    CHECK(m3.size() == 3);
    CHECK(m3[0].bound == 1);

    CHECK_THROWS_WITH_AS(rv_inequalities({2, 2}, {{1, 1}, {1, 2}}),
                         "setting 1 of party 1 occurs an odd number of times",
                         std::invalid_argument);
}

TEST_CASE("rv inequalities hold for every deterministic strategy") {
    CounterRng rng(0x22u);
    std::vector<std::size_t> settings{2, 2};
    StrategyMatrix M = strategy_matrix(settings);
    CorrelationVector shape(settings);
    for (int family = 0; family < 30; ++family) {
        // Random even-parity family: pairs of random non-identity tuples.
        std::vector<std::vector<std::size_t>> obs;
        int pairs = 2 + int(rng.next_below(3));
        for (int p = 0; p < pairs; ++p) {
            std::size_t idx = 1 + rng.next_below(shape.index_count() - 1);
            obs.push_back(shape.tuple_of(idx));
            obs.push_back(shape.tuple_of(idx));
        }
        for (const RvInequality& ineq : rv_inequalities(settings, obs)) {
            for (std::size_t s = 0; s < M.cols; ++s) {
                auto [lhs, ok] = evaluate_inequality(ineq, column_vector(M, s));
                CHECK(ok);
            }
        }
    }
}

TEST_CASE("CHSH satisfaction implies longer rv inequalities empirically") {
    CounterRng rng(0x23u);
    std::vector<std::size_t> settings{2, 2};
    CorrelationVector shape(settings);
    std::vector<std::vector<std::size_t>> products{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    auto chsh = rv_inequalities(settings, products);

    int tested = 0;
    for (int trial = 0; trial < 400 && tested < 40; ++trial) {
        CorrelationVector C(settings);
        for (std::size_t i = 1; i < C.index_count(); ++i) {
            C.values[i] = Rational(int(rng.next_below(2001)) - 1000, 1000);
        }
        bool chsh_holds = true;
        for (const RvInequality& ineq : chsh) {
            if (!evaluate_inequality(ineq, C).second) chsh_holds = false;
        }
        if (!chsh_holds) continue;
        ++tested;
        // Random even families up to m = 8 must then hold as well.
        for (int family = 0; family < 20; ++family) {
            std::vector<std::vector<std::size_t>> obs;
            int pairs = 1 + int(rng.next_below(4));
            for (int p = 0; p < pairs; ++p) {
                std::size_t idx = 1 + rng.next_below(shape.index_count() - 1);
                obs.push_back(shape.tuple_of(idx));
                obs.push_back(shape.tuple_of(idx));
            }
            for (const RvInequality& ineq : rv_inequalities(settings, obs)) {
                CHECK(evaluate_inequality(ineq, C).second);
            }
        }
    }
    CHECK(tested == 40);
}

TEST_CASE("gpt presets, validity, reduction, and correlations") {
    GptState pr = gpt_pr_preset();
    CHECK(gpt_correlation(pr, 0, 0) == doctest::Approx(1.0));
    CHECK(gpt_correlation(pr, 1, 1) == doctest::Approx(-1.0));
    GptState pr_marginal = gpt_reduce(pr);
    for (double bj : pr_marginal.b) CHECK(bj == doctest::Approx(0.0));

    GptState bell = gpt_bell_preset();
    double q = 1.0 / std::sqrt(2.0);
    CHECK(gpt_correlation(bell, 0, 0) == doctest::Approx(q));
    for (double bj : gpt_reduce(bell).b) CHECK(bj == doctest::Approx(0.0));

    // CHSH functional values: PR box 4, Bell state 2√2.
    auto chsh_value = [](const GptState& s) {
        return gpt_correlation(s, 0, 0) + gpt_correlation(s, 0, 1) +
               gpt_correlation(s, 1, 0) - gpt_correlation(s, 1, 1);
    };
    CHECK(chsh_value(pr) == doctest::Approx(4.0));
    CHECK(chsh_value(bell) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));

    // Product state: marginals recovered, correlations factorize.
    std::vector<double> a{0.5, -0.25}, b{0.75, 0.0};
    std::vector<double> c(4);
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < 2; ++k) c[j * 2 + k] = a[j] * b[k];
    }
    GptState prod = gpt_make_bipartite(2, a, b, c);
    GptState red = gpt_reduce(prod);
    CHECK(red.b[0] == doctest::Approx(0.5));
    CHECK(red.b[1] == doctest::Approx(-0.25));
    CHECK(gpt_correlation(prod, 0, 1) == doctest::Approx(0.0));
    CHECK(gpt_correlation(prod, 1, 0) == doctest::Approx(-0.25 * 0.75));

    // Perfectly biased marginals force c = +1.
    CHECK_THROWS_WITH_AS(
        gpt_make_bipartite(2, {1, 0}, {1, 0}, {-1, 0, 0, 0}),
        "correlation c(0,0) outside the allowed range", std::invalid_argument);
}
