#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "stackstop/posterior.hpp"
#include "stackstop/rng.hpp"

using namespace stackstop;

TEST_CASE("single updates match the fifty-object reference grid") {
    // rows mu1 = 20..23, columns mu2 = 21..24, starting posterior 1/2
    const double grid[4][4] = {
        {0.6667, 0.6724, 0.6780, 0.6833},
        {-1, 0.6667, 0.6721, 0.6774},
        {-1, -1, 0.6667, 0.6719},
        {-1, -1, -1, 0.6667},
    };
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (grid[i][j] < 0) continue;
            const int mu1 = 20 + i, mu2 = 21 + j;
            CHECK(std::abs(update_posterior<double>(mu1, mu2, 0.5) - grid[i][j]) <= 5e-5);
        }
    }
}

TEST_CASE("certainty is absorbing and bad inputs are rejected") {
    CHECK(update_posterior<double>(10, 14, 1.0) == 1.0);
    CHECK(update_posterior<Rational>(7, 9, Rational(1)) == Rational(1));
    CHECK_THROWS_AS(update_posterior<double>(10, 10, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(update_posterior<double>(12, 11, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(update_posterior<double>(10, 12, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(update_posterior<double>(10, 12, -0.1), std::invalid_argument);
}

TEST_CASE("posterior from candidate histories") {
    CHECK(posterior_from_history<Rational>(std::vector<int>{20, 21}) == Rational(2, 3));
    for (int mu1 : {5, 20, 49}) {
        CHECK(posterior_from_history<double>(std::vector<int>{mu1}) == 0.5);
    }
    // consecutive histories attain the floor m/(m+1) exactly
    for (int m = 1; m <= 6; ++m) {
        std::vector<int> hist;
        for (int i = 1; i <= m; ++i) hist.push_back(20 + i);
        CHECK(posterior_from_history<Rational>(hist) == Rational(m, m + 1));
    }
    CHECK(posterior_from_history<double>(std::vector<int>{}) == 0.0);
    CHECK_THROWS_AS(posterior_from_history<double>(std::vector<int>{20, 20}), std::invalid_argument);
    CHECK_THROWS_AS(posterior_from_history<double>(std::vector<int>{21, 20}), std::invalid_argument);
}

TEST_CASE("asymptotic update") {
    CHECK(asymptotic_update(0.4, 0.8, 0.5) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(asymptotic_update(0.4, 0.8, 1.0) == 1.0);
    // consecutive-candidate limit
    CHECK(std::abs(asymptotic_update(0.5, 0.5 + 1e-10, 0.5) - 2.0 / 3) <= 1e-9);
    CHECK_THROWS_AS(asymptotic_update(0.8, 0.4, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(asymptotic_update(0.4, 1.2, 0.5), std::invalid_argument);
}

TEST_CASE("update properties over randomized states") {
    SplitMix64 rng(314159);
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(400));
        const int k = n + 1 + static_cast<int>(rng.next_below(100));
        const double p = static_cast<double>(rng.next()) / static_cast<double>(~0ull);
        if (p <= 0.0 || p >= 1.0) continue;
        const double up = update_posterior<double>(n, k, p);
        CHECK(up > p);                                               // growth
        CHECK(update_posterior<double>(n, k + 1, p) > up);            // monotone in k
        const double p2 = std::min(1.0, p + 0.1);
        CHECK(update_posterior<double>(n, k, p2) > up);               // monotone in p
    }
}

TEST_CASE("floor is attained only by consecutive histories") {
    SplitMix64 rng(271828);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n_star = 5 + static_cast<int>(rng.next_below(40));
        const int m = 2 + static_cast<int>(rng.next_below(4));
        std::vector<int> hist{n_star + 1 + static_cast<int>(rng.next_below(5))};
        bool consecutive = true;
        for (int i = 1; i < m; ++i) {
            const int gap = 1 + static_cast<int>(rng.next_below(4));
            if (gap > 1) consecutive = false;
            hist.push_back(hist.back() + gap);
        }
        const Rational p = posterior_from_history<Rational>(hist);
        const Rational floor(m, m + 1);
        if (consecutive) {
            CHECK(p == floor);
        } else {
            CHECK(p > floor);
        }
    }
}

TEST_CASE("discrete update converges to the continuous one") {
    const int big_n = 1000000;
    struct Case {
        double s_prev, s_next, p;
    };
    for (const Case& c : {Case{0.4, 0.8, 0.5}, Case{0.4, 0.5, 0.7}, Case{0.37, 0.99, 0.51}, Case{0.6, 0.61, 0.9}}) {
        const int n = static_cast<int>(c.s_prev * big_n);
        const int k = static_cast<int>(c.s_next * big_n);
        const double discrete = update_posterior<double>(n, k, c.p);
        const double continuous = asymptotic_update(c.s_prev, c.s_next, c.p);
        CHECK(std::abs(discrete - continuous) <= 1e-4);
    }
}
