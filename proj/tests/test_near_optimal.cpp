#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stackstop/exact_response.hpp"
#include "stackstop/near_optimal.hpp"
#include "stackstop/rng.hpp"

using namespace stackstop;

TEST_CASE("count thresholds for fifty objects") {
    NearOptimalSolver<double> solver(50);
    CHECK(solver.count_threshold(20) == 9);
    CHECK(solver.count_threshold(21) == 5);
    CHECK(solver.count_threshold(22) == 4);
    CHECK(solver.count_threshold(23) == 3);
    CHECK(solver.count_threshold(24) == 3);
    CHECK(solver.count_threshold(25) == 2);
    CHECK(solver.count_threshold(28) == 2);
    CHECK(solver.count_threshold(29) == 1);
    CHECK_THROWS_AS(solver.count_threshold(19), std::invalid_argument);
    CHECK(count_threshold_K(50, 20) == 9);

    // the ratios under the ceilings
    TailSums<double> sums(50);
    auto ratio_at = [&](int n) { return sums.s2(n) / (1.0 - sums.s1(n)); };
    CHECK(std::abs(ratio_at(20) - 8.9334) <= 5e-5);
    CHECK(std::abs(ratio_at(23) - 2.6040) <= 5e-5);
    CHECK(std::abs(ratio_at(29) - 0.9567) <= 5e-5);
}

TEST_CASE("fifty-object near-optimal solution") {
    NearOptimalSolver<double> solver(50);
    CHECK(solver.m0() == 4);
    REQUIRE(solver.n_m().size() == 4);
    CHECK(solver.n_m()[0] == 29);
    CHECK(solver.n_m()[1] == 25);
    CHECK(solver.n_m()[2] == 23);
    CHECK(solver.n0_a() == 11);
    CHECK(std::abs(solver.va(18, -1) - 0.145868) <= 5e-7);
    CHECK(std::abs(solver.value() - 0.203155) <= 5e-7);

    const NearOptimalSolution sol = solve_near_optimal(50);
    CHECK(sol.m0 == 4);
    CHECK(sol.n0_a == 11);
    CHECK(std::abs(sol.value - 0.203155) <= 5e-7);
}

TEST_CASE("w approximation") {
    // m -> infinity recovers the rank-1 stopping reward
    CHECK(std::abs(w_approx(50, 18, 1000000) - 0.374275) <= 1e-5);
    // m = 0, n = N-1: single-term sum, exact
    NearOptimalSolver<Rational> exact(5);
    CHECK(exact.w_approx(4, 0) == Rational(1, 5));
    // ceiling boundary: at m = K(n) stopping beats the one-step estimate
    NearOptimalSolver<double> solver(50);
    const int k29 = solver.count_threshold(29);
    CHECK(solver.w_approx(29, k29) <= 29.0 * k29 / (50.0 * (k29 + 1)) + 1e-12);
    CHECK_THROWS_AS(solver.w_approx(18, -1), std::invalid_argument);
    CHECK_THROWS_AS(solver.w_approx(50, 1), std::invalid_argument);
}

TEST_CASE("thresholds are monotone") {
    for (int n_objects : {30, 50, 100}) {
        NearOptimalSolver<double> solver(n_objects);
        for (int n = solver.n_star() + 1; n < n_objects; ++n) {
            CHECK(solver.count_threshold(n) >= solver.count_threshold(n + 1));
        }
        for (std::size_t i = 1; i < solver.n_m().size(); ++i) {
            CHECK(solver.n_m()[i] <= solver.n_m()[i - 1]);
        }
    }
}

TEST_CASE("count thresholds equal the optimal always-accept thresholds") {
    for (int n_objects : {5, 8, 12, 20, 50, 75}) {
        GameSolver<double> game(n_objects);
        NearOptimalSolver<double> near(n_objects);
        CHECK(game.m0() == near.m0());
        REQUIRE(game.always_accept_from().size() == near.n_m().size());
        for (std::size_t i = 0; i < near.n_m().size(); ++i) {
            CHECK(game.always_accept_from()[i] == near.n_m()[i]);
        }
    }
}

TEST_CASE("approximation is a lower bound on the optimal value") {
    SplitMix64 rng(5150);
    for (int n_objects : {20, 40, 60}) {
        GameSolver<double> game(n_objects);
        NearOptimalSolver<double> near(n_objects);
        CHECK(near.value() <= game.u2() + 1e-12);
        for (int n = 0; n < n_objects; ++n) CHECK(near.va(n, -1) <= game.vm1(n) + 1e-12);
        for (int trial = 0; trial < 400; ++trial) {
            const int m = 1 + static_cast<int>(rng.next_below(std::min(3, near.m0())));
            std::vector<int> hist{game.n_star() + 1 + static_cast<int>(rng.next_below(4))};
            for (int i = 1; i < m; ++i) hist.push_back(hist.back() + 1 + static_cast<int>(rng.next_below(3)));
            if (hist.back() > n_objects) continue;
            if (m >= near.m0()) continue;
            const double va = near.va(hist.back(), m);
            const double v = game.value_history(hist);
            CHECK(va <= v + 1e-12);
        }
    }
}

TEST_CASE("gap to the optimal value at fifty objects is tiny") {
    GameSolver<double> game(50);
    NearOptimalSolver<double> near(50);
    CHECK(near.value() <= game.u2());
    CHECK(game.u2() - near.value() < 1e-5);
}

TEST_CASE("identical to the optimal strategy for small N and twenty") {
    for (int n_objects : {3, 4, 5, 6, 7, 8, 9, 10, 20}) {
        const GameSolution game = solve_game(n_objects);
        const NearOptimalSolution near = solve_near_optimal(n_objects);
        CHECK(game.n0 == near.n0_a);
        CHECK(game.m0 == near.m0);
        for (const StrategyClause& clause : game.strategy) {
            CHECK(clause.exceptions.empty());
        }
        REQUIRE(game.always_accept_from.size() == near.n_m.size());
        for (std::size_t i = 0; i < near.n_m.size(); ++i) {
            CHECK(game.always_accept_from[i] == near.n_m[i]);
        }
    }
}

TEST_CASE("fifty-object strategies differ only at the known state") {
    // optimal accepts the second candidate at moment 24 when the first was
    // seen before moment 22; the count-based rule always rejects there
    const GameSolution game = solve_game(50);
    int exceptions = 0;
    for (const StrategyClause& clause : game.strategy) exceptions += static_cast<int>(clause.exceptions.size());
    CHECK(exceptions == 1);
    const NearOptimalSolution near = solve_near_optimal(50);
    CHECK(game.n0 == near.n0_a);
    for (std::size_t i = 0; i < near.n_m.size(); ++i) {
        CHECK(game.always_accept_from[i] == near.n_m[i]);
    }
}
