#pragma once
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stackstop/series.hpp"

namespace stackstop {

// Player 1's side of the game: the classical secretary problem solved by
// backward induction.
template <class Real>
struct P1Solution {
    int n_objects = 0;
    int threshold = 0;    // n*: accept the first relative-rank-1 object at moment >= n*
    std::vector<Real> u;  // u[n]: optimal success probability after rejecting n objects
    std::vector<Real> z;  // z[n]: reward from accepting the next candidate after moment n
};

// z_n = (n/N) sum_{k=n+1}^{N} 1/(k-1) for n >= 1. The formula degenerates at
// n = 0; there the next candidate is the first object, best with prob 1/N.
template <class Real>
Real stopping_reward_z(int n_objects, int n) {
    if (n_objects < 1 || n < 0 || n >= n_objects) {
        throw std::invalid_argument("stopping_reward_z: need 0 <= n < N");
    }
    if (n == 0) return ratio<Real>(1, n_objects);
    TailSums<Real> sums(n_objects);
    return ratio<Real>(n, n_objects) * sums.s1(n);
}

template <class Real>
P1Solution<Real> solve_p1(int n_objects) {
    if (n_objects < 1) throw std::invalid_argument("solve_p1: N must be positive");
    const int N = n_objects;
    P1Solution<Real> sol;
    sol.n_objects = N;
    sol.u.assign(N + 1, Real(0));
    for (int n = N - 1; n >= 0; --n) {
        const Real stop = ratio<Real>(n + 1, N);
        sol.u[n] = (std::max(stop, sol.u[n + 1]) + Real(n) * sol.u[n + 1]) / Real(n + 1);
    }
    // Smallest n with n/N >= u_n; ties resolve to "accept".
    sol.threshold = N;
    for (int n = 1; n <= N; ++n) {
        if (ratio<Real>(n, N) >= sol.u[n]) {
            sol.threshold = n;
            break;
        }
    }
    sol.z.assign(N + 1, Real(0));
    TailSums<Real> sums(N);
    sol.z[0] = ratio<Real>(1, N);
    for (int n = 1; n < N; ++n) sol.z[n] = ratio<Real>(n, N) * sums.s1(n);
    return sol;
}

// Transition mass for the moment of the next candidate after moment n.
// rank == 1: candidates are relative-rank-1 objects (Player 1's view);
// rank == 2: relative rank <= 2 (Player 2's view after the removal).
// k == N+1 is the sentinel "no further candidate appears".
template <class Real>
Real candidate_gap_mass(int n_objects, int n, int k, int rank) {
    const int N = n_objects;
    if (rank != 1 && rank != 2) throw std::invalid_argument("candidate_gap_mass: rank must be 1 or 2");
    if (n < (rank == 1 ? 1 : 2) || n >= k || k > N + 1) {
        throw std::invalid_argument("candidate_gap_mass: need rank <= n < k <= N+1");
    }
    if (rank == 1) {
        if (k == N + 1) return ratio<Real>(n, N);
        return ratio<Real>(n, static_cast<long long>(k - 1) * k);
    }
    if (k == N + 1) return ratio<Real>(static_cast<long long>(n) * (n - 1), static_cast<long long>(N) * (N - 1));
    return ratio<Real>(2ll * n * (n - 1), static_cast<long long>(k) * (k - 1) * (k - 2));
}

// Asymptotic rewards for accepting the next candidate after time t:
// z(t) = -t ln t (relative rank 1), y(t) = t(1-t) (relative rank <= 2).
inline std::pair<double, double> asymptotic_z_y(double t) {
    if (!(t > 0.0) || t > 1.0) throw std::invalid_argument("asymptotic_z_y: need 0 < t <= 1");
    return {-t * std::log(t), t * (1.0 - t)};
}

} // namespace stackstop
