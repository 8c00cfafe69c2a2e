#pragma once
#include <cmath>
#include <span>
#include <stdexcept>

#include "stackstop/rational.hpp"

namespace stackstop {

// Player 2's information state at a decision point. count = -1 means Player 1
// is still searching; count = 0 means Player 1 has accepted but no candidate
// has appeared since (p is stored as 0 for that sentinel); count = m >= 1
// means the m-th candidate was just seen with posterior p of relative rank 1.
struct PosteriorState {
    int moment = 0;
    int count = -1;
    double p = 0.0;
};

// One Bayesian step: the candidate after one at moment n with posterior p
// appears at moment k; returns the new posterior
//   f(n,k,p) = 1 - (n-1)(1-p) / [ (k-2)p + 2(n-1)(1-p) ].
// p == 1 is absorbing and short-circuits the quotient.
template <class Real>
Real update_posterior(int n, int k, const Real& p) {
    if (k <= n || n < 2) throw std::invalid_argument("update_posterior: need 2 <= n < k");
    if (p < Real(0) || p > Real(1)) throw std::invalid_argument("update_posterior: p outside [0,1]");
    if (p == Real(1)) return Real(1);
    const Real q = Real(1) - p;
    return Real(1) - (Real(n - 1) * q) / (Real(k - 2) * p + Real(2) * Real(n - 1) * q);
}

// Folds update_posterior over a candidate-moment history, starting from 1/2
// at the first moment. Empty history is the m = 0 sentinel with p = 0.
template <class Real>
Real posterior_from_history(std::span<const int> moments) {
    if (moments.empty()) return Real(0);
    Real p = ratio<Real>(1, 2);
    for (std::size_t i = 1; i < moments.size(); ++i) {
        if (moments[i] <= moments[i - 1]) {
            throw std::invalid_argument("posterior_from_history: moments must be strictly increasing");
        }
        p = update_posterior(moments[i - 1], moments[i], p);
    }
    return p;
}

// Continuous-time limit of the update: candidates at times s_prev < s_next.
inline double asymptotic_update(double s_prev, double s_next, double p) {
    if (!(s_prev < s_next) || s_prev <= 0.0 || s_next > 1.0) {
        throw std::invalid_argument("asymptotic_update: need 0 < s_prev < s_next <= 1");
    }
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("asymptotic_update: p outside [0,1]");
    if (p == 1.0) return 1.0;
    return (s_next * p + s_prev * (1.0 - p)) / (s_next * p + 2.0 * s_prev * (1.0 - p));
}

} // namespace stackstop
