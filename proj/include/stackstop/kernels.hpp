#pragma once
#include "stackstop/series.hpp"

namespace stackstop {

// Transition and acceptance kernels shared by the exact and the count-based
// solvers (the latter substitutes p = m/(m+1)).

// P(next candidate to Player 2 appears at moment k | posterior p at moment n).
template <class Real>
Real candidate_arrival(int n, int k, const Real& p) {
    return p * ratio<Real>(n, static_cast<long long>(k) * (k - 1)) +
           (Real(1) - p) * ratio<Real>(2ll * n * (n - 1), static_cast<long long>(k) * (k - 1) * (k - 2));
}

// sum_{k=k0}^{N} P(next candidate at k) * (k/N) * p_updated(k), i.e. the
// reward from accepting the next candidate whenever it appears at or after
// moment k0. With k0 = n+1 this is the one-step reward w(n, p).
template <class Real>
Real accept_tail(int n_objects, int k0, int n, const Real& p, const TailSums<Real>& sums) {
    const int N = n_objects;
    if (k0 > N) return Real(0);
    return ratio<Real>(n, N) * p * sums.s1(k0 - 1) +
           ratio<Real>(static_cast<long long>(n) * (n - 1), N) * (Real(1) - p) * sums.t2(k0 - 1);
}

// P(Player 1, still searching at moment n, accepts at moment k).
template <class Real>
Real p1_arrival(int n, int k) {
    return ratio<Real>(n, static_cast<long long>(k) * (k - 1));
}

} // namespace stackstop
