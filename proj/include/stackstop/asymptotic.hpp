#pragma once
#include <vector>

#include "stackstop/log_poly.hpp"

namespace stackstop {

// Player 2's continuous-time acceptance threshold: accept a candidate in
// state (t, p) iff p >= q(t) = (1-t)/(2-t+ln t), for t in [e^-1, 1].
double asymptotic_q(double t);

// t_m: the earliest time at which the m-th candidate after e^-1 is accepted
// under the count-based rule; fixed point of t = exp((1-m-t)/m), solved by
// iteration to |delta| < 1e-12.
double solve_threshold_t(int m);

// The information-augmented game: after each rejection past e^-1 Player 2
// learns the candidate's relative rank. Its value bounds the game from above.
struct UpperBoundResult {
    double t1 = 0.0;
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    double t0_u = 0.0;            // value of the augmented game, = upper bound
    PiecewiseLogPoly u2;          // u(t, 2) on [e^-1, 1]
    PiecewiseLogPoly u_m1;        // u(t, -1) on [e^-1, 1]
};

UpperBoundResult upper_bound();

// The memory-k game: Player 2 counts at most k previous candidates. Its
// value bounds the game from below and increases with k.
struct LowerBoundResult {
    int k = 0;
    std::vector<double> thresholds; // t_1 .. t_{k+1}
    double t0_k = 0.0;              // earliest acceptance time, = v^k(0,-1)
    double value = 0.0;             // v^k(0,-1)
    std::vector<PiecewiseLogPoly> v; // v[m] = v^k(., m) on [e^-1, 1], m = 0..k
    PiecewiseLogPoly v_m1;           // v^k(., -1) on [e^-1, 1]
    double pre_coeff = 0.0;          // v^k(t,-1) = -t ln t + pre_coeff * t on [t0_k, e^-1)
};

LowerBoundResult lower_bound(int k); // 0 <= k <= 8

// Upper bound on v^inf(0,-1) - v^k(0,-1): the cost of forgetting, from the
// Poisson tail of the number of candidates in (e^-1, t_{k+1}).
double truncation_bound(int k);

} // namespace stackstop
