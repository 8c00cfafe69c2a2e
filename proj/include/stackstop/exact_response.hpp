#pragma once
#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "stackstop/classical_secretary.hpp"
#include "stackstop/kernels.hpp"
#include "stackstop/posterior.hpp"

namespace stackstop {

// History-dependent acceptance below a clause's unconditional threshold.
struct StrategyException {
    int moment = 0;        // the candidate's moment n
    int mu_index = 0;      // condition refers to the mu_index-th earlier candidate; 0 = explicit list
    int before_moment = 0; // accept iff that candidate appeared before this moment
    std::vector<std::vector<int>> accept_histories; // explicit fallback when no single cutoff applies
    std::string text;
};

struct StrategyClause {
    int candidate_index = 0; // m; 0 encodes the pre-threshold clause
    int accept_from = 0;     // accept iff n >= accept_from
    int accept_to = 0;       // pre clause only: valid until n*-1
    bool always = false;     // m == m0: accepted wherever it appears
    std::vector<StrategyException> exceptions;
    std::string text;
};

struct GameSolution {
    int n_objects = 0;
    int n_star = 0;
    int n0 = 0;
    int n1 = 0; // smallest n > n* with q_n <= 1/2
    int m0 = 0;
    double u1 = 0.0;
    double u2 = 0.0;
    std::vector<double> q;               // q_n for n = n_star+1 .. N
    std::vector<int> always_accept_from; // per candidate index m = 1..m0
    std::vector<StrategyClause> strategy;
    bool exact = false;                  // solved in rational arithmetic (N <= 12)
    Rational u1_exact, u2_exact;
    std::vector<Rational> q_exact;       // same indexing as q; filled when exact
};

// Player 2's optimal response to the threshold rule of Player 1. Immutable
// once constructed; all queries are const.
template <class Real>
class GameSolver {
public:
    static constexpr int kMaxObjects = 500;

    explicit GameSolver(int n_objects)
        : n_(n_objects), sums_(checked(n_objects)), p1_(solve_p1<Real>(n_objects)) {
        n_star_ = p1_.threshold;
        build_q_table();
        build_always_thresholds();
        build_values();
        build_strategy();
    }

    int n_objects() const { return n_; }
    int n_star() const { return n_star_; }
    int n0() const { return n0_; }
    int n1() const { return always_from_[0]; }
    int m0() const { return m0_; }
    const std::vector<int>& always_accept_from() const { return always_from_; }
    const std::vector<StrategyClause>& strategy() const { return strategy_; }
    const TailSums<Real>& sums() const { return sums_; }
    const P1Solution<Real>& p1() const { return p1_; }

    Real u1() const { return p1_.u[0]; }
    Real u2() const { return vm1_[0]; }

    // q_n; acceptance before n* is governed by n0, so n <= n* is rejected.
    const Real& q(int n) const {
        if (n <= n_star_ || n > n_) throw std::invalid_argument("q: need n* < n <= N");
        return q_[n];
    }

    Real stop_now(int n, const Real& p) const { return ratio<Real>(n, n_) * p; }

    // w(n,p): reward from accepting the next candidate to appear.
    Real one_step_reward(int n, const Real& p) const {
        if (n < n_star_ || n >= n_) throw std::invalid_argument("one_step_reward: need n* <= n < N");
        return accept_tail(n_, n + 1, n, p, sums_);
    }

    // v at the state reached by rejecting candidates at the given moments
    // (all > n*, strictly increasing).
    Real value_history(std::span<const int> moments) {
        if (moments.empty()) throw std::invalid_argument("value_history: empty history");
        if (moments.front() <= n_star_) throw std::invalid_argument("value_history: first moment must exceed n*");
        if (moments.back() > n_) throw std::invalid_argument("value_history: moment beyond N");
        Real p = posterior_from_history<Real>(moments);
        std::vector<int> key(moments.begin(), moments.end());
        return vstate(key, moments.back(), p);
    }

    // v(n, p) for a general state: count = -1 (Player 1 searching),
    // 0 (accepted, no candidate since) or m >= 1 (posterior p at moment n).
    Real value_state(int n, int count, const Real& p) {
        if (count == -1) {
            if (n < 0 || n >= n_) throw std::invalid_argument("value_state: need 0 <= n < N for count -1");
            return vm1_[n];
        }
        if (count == 0) {
            if (n < n_star_ || n > n_) throw std::invalid_argument("value_state: need n* <= n <= N for count 0");
            return v0_[n];
        }
        if (n < n_star_ + count || n > n_) throw std::domain_error("value_state: moment unreachable for count");
        if (count == 1 && !(p == ratio<Real>(1, 2))) throw std::domain_error("value_state: first candidate has p = 1/2");
        if (!(p >= ratio<Real>(count, count + 1)) || !(p <= Real(1))) {
            throw std::domain_error("value_state: posterior outside [m/(m+1), 1]");
        }
        std::vector<int> key = synthetic_key(n, count, p);
        return vstate(key, n, p);
    }

    Real v0(int n) const { return v0_[n]; }   // state (n, 0), n in [n*, N]
    Real vm1(int n) const { return vm1_[n]; } // state (n, -1), n in [0, N-1]

    GameSolution solution() const {
        GameSolution out;
        out.n_objects = n_;
        out.n_star = n_star_;
        out.n0 = n0_;
        out.n1 = always_from_[0];
        out.m0 = m0_;
        out.u1 = to_double(u1());
        out.u2 = to_double(u2());
        for (int n = n_star_ + 1; n <= n_; ++n) out.q.push_back(to_double(q_[n]));
        out.always_accept_from = always_from_;
        out.strategy = strategy_;
        if constexpr (std::is_same_v<Real, Rational>) {
            out.exact = true;
            out.u1_exact = u1();
            out.u2_exact = u2();
            for (int n = n_star_ + 1; n <= n_; ++n) out.q_exact.push_back(q_[n]);
        }
        return out;
    }

private:
    static int checked(int n_objects) {
        if (n_objects < 3 || n_objects > kMaxObjects) {
            throw std::invalid_argument("GameSolver: supported range is 3 <= N <= 500");
        }
        return n_objects;
    }

    void build_q_table() {
        q_.assign(n_ + 1, Real(0));
        for (int n = n_star_ + 1; n <= n_; ++n) {
            const Real s2 = sums_.s2(n);
            q_[n] = s2 / (Real(1) + s2 - sums_.s1(n));
        }
    }

    void build_always_thresholds() {
        // A_m: smallest n > n* at which the posterior floor m/(m+1) clears q_n.
        // m0: smallest m whose threshold is reached by the earliest possible
        // moment n*+m of the m-th candidate.
        always_from_.clear();
        for (int m = 1;; ++m) {
            int a = n_;
            for (int n = n_star_ + 1; n <= n_; ++n) {
                if (q_[n] <= ratio<Real>(m, m + 1)) {
                    a = n;
                    break;
                }
            }
            always_from_.push_back(a);
            if (a <= n_star_ + m) {
                m0_ = m;
                break;
            }
        }
    }

    void build_values() {
        // States (n, 0): recurse over the moment of Player 2's first candidate.
        v0_.assign(n_ + 1, Real(0));
        const int n1 = always_from_[0];
        for (int n = n_; n >= n_star_; --n) {
            if (n >= n1 - 1) {
                v0_[n] = accept_tail(n_, n + 1, n, Real(0), sums_);
            } else {
                Real acc = accept_tail(n_, n1, n, Real(0), sums_);
                for (int k = n + 1; k < n1; ++k) {
                    std::vector<int> key{k};
                    acc += candidate_arrival(n, k, Real(0)) * vstate(key, k, ratio<Real>(1, 2));
                }
                v0_[n] = acc;
            }
        }
        // States (n, -1) for n >= n*-1: Player 1 accepts at the next
        // relative-rank-1 moment.
        vm1_.assign(n_, Real(0));
        for (int n = n_ - 1; n >= n_star_ - 1; --n) {
            Real acc(0);
            for (int k = n + 1; k <= n_; ++k) acc += p1_arrival<Real>(n, k) * v0_[k];
            vm1_[n] = acc;
        }
        // Pre-threshold region: accept a candidate iff n >= n0.
        const Real anchor = vm1_[n_star_ - 1];
        n0_ = n_star_;
        for (int n = 1; n <= n_star_ - 1; ++n) {
            const Real lhs = Real(n_) * anchor / Real(n_star_ - 1) + pre_sum(n);
            if (lhs <= Real(1)) {
                n0_ = n;
                break;
            }
        }
        for (int n = n_star_ - 2; n >= 1; --n) {
            if (n >= n0_ - 1) {
                vm1_[n] = ratio<Real>(n, n_) * pre_sum(n) + ratio<Real>(n, n_star_ - 1) * anchor;
            } else {
                vm1_[n] = vm1_[n0_ - 1];
            }
        }
        // From moment 0 the next candidate is the first object itself.
        vm1_[0] = (n0_ == 1) ? ratio<Real>(1, n_) : vm1_[n0_ - 1];
    }

    // sum_{k=n+1}^{n*-1} 1/(k-1)
    Real pre_sum(int n) const { return sums_.s1(n) - sums_.s1(n_star_ - 1); }

    std::vector<int> synthetic_key(int n, int count, const Real& p) const {
        // Distinct from genuine history keys, whose entries are all positive.
        std::vector<int> key{-count, n};
        if constexpr (std::is_same_v<Real, double>) {
            const auto bits = std::bit_cast<std::uint64_t>(p);
            key.push_back(static_cast<int>(bits >> 32));
            key.push_back(static_cast<int>(bits & 0xFFFFFFFFull));
        }
        return key;
    }

    // v(n, p) after rejecting a candidate with posterior p at moment n > n*.
    // Memo keys: exact posterior for the rational engine, the candidate-moment
    // tuple for the double engine (float keys would be unstable).
    Real vstate(std::vector<int>& key, int n, const Real& p) {
        if (p >= q_[n]) return accept_tail(n_, n + 1, n, p, sums_);
        if constexpr (std::is_same_v<Real, Rational>) {
            auto it = memo_exact_.find({n, p});
            if (it != memo_exact_.end()) return it->second;
        } else {
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        // First moment whose threshold the updated posterior clears; exists
        // because q_N = 0. Monotone in k, so the scan can stop at the first hit.
        int k0 = n + 1;
        while (k0 <= n_ && update_posterior(n, k0, p) < q_[k0]) ++k0;
        Real acc = accept_tail(n_, k0, n, p, sums_);
        for (int k = n + 1; k < k0; ++k) {
            const Real pk = update_posterior(n, k, p);
            key.push_back(k);
            acc += candidate_arrival(n, k, p) * vstate(key, k, pk);
            key.pop_back();
        }
        if constexpr (std::is_same_v<Real, Rational>) {
            memo_exact_.emplace(std::make_pair(n, p), acc);
        } else {
            memo_.emplace(key, acc);
        }
        return acc;
    }

    // Enumerates reachable rejected histories of the given length that end
    // strictly before moment `end`, invoking fn(moments, posterior).
    template <class Fn>
    void for_each_reachable_prefix(int length, int end, Fn&& fn) {
        std::vector<int> cur;
        auto rec = [&](auto&& self, Real p) -> void {
            if (static_cast<int>(cur.size()) == length) {
                fn(cur, p);
                return;
            }
            const int depth = static_cast<int>(cur.size()) + 1;
            const int lo = cur.empty() ? n_star_ + 1 : cur.back() + 1;
            const int hi = end - (length - depth);
            for (int mu = std::max(lo, n_star_ + depth); mu < hi; ++mu) {
                const Real pm = cur.empty() ? ratio<Real>(1, 2) : update_posterior(cur.back(), mu, p);
                if (pm >= q_[mu]) continue; // accepted; no continuation through this state
                cur.push_back(mu);
                self(self, pm);
                cur.pop_back();
            }
        };
        rec(rec, Real(0));
    }

    void build_strategy() {
        strategy_.clear();
        StrategyClause pre;
        pre.candidate_index = 0;
        pre.accept_from = n0_;
        pre.accept_to = n_star_ - 1;
        pre.text = "accept a candidate if " + std::to_string(n0_) + " <= n <= " + std::to_string(n_star_ - 1);
        strategy_.push_back(std::move(pre));

        for (int m = 1; m <= m0_; ++m) {
            StrategyClause clause;
            clause.candidate_index = m;
            if (m == m0_) {
                clause.always = true;
                clause.accept_from = n_star_ + m;
                clause.text = "always accept candidate " + std::to_string(m) + " seen after moment " +
                              std::to_string(n_star_);
                strategy_.push_back(std::move(clause));
                break;
            }
            clause.accept_from = always_from_[m - 1];
            clause.text = "accept candidate " + std::to_string(m) + " seen after moment " +
                          std::to_string(n_star_) + " iff n >= " + std::to_string(clause.accept_from);
            for (int n = n_star_ + m; n < clause.accept_from; ++n) {
                std::vector<std::vector<int>> accepted;
                for_each_reachable_prefix(m - 1, n, [&](const std::vector<int>& h, const Real& p) {
                    const Real pm = h.empty() ? ratio<Real>(1, 2) : update_posterior(h.back(), n, p);
                    if (pm >= q_[n]) accepted.push_back(h);
                });
                if (accepted.empty()) continue;
                StrategyException ex;
                ex.moment = n;
                if (m == 2) {
                    // f(mu_1, n, 1/2) falls as mu_1 grows, so the accept set is
                    // an initial segment of mu_1 values.
                    int cutoff = 0;
                    for (const auto& h : accepted) cutoff = std::max(cutoff, h[0]);
                    ex.mu_index = 1;
                    ex.before_moment = cutoff + 1;
                    ex.text = "at n = " + std::to_string(n) + " accept if the first candidate appeared before moment " +
                              std::to_string(ex.before_moment);
                } else {
                    ex.accept_histories = accepted;
                    ex.text = "at n = " + std::to_string(n) + " accept for " + std::to_string(accepted.size()) +
                              " specific earlier-candidate patterns (online rule: accept iff posterior >= q_n)";
                }
                clause.text += "; " + ex.text;
                clause.exceptions.push_back(std::move(ex));
            }
            strategy_.push_back(std::move(clause));
        }
    }

    int n_;
    TailSums<Real> sums_;
    P1Solution<Real> p1_;
    int n_star_ = 0;
    int n0_ = 0;
    int m0_ = 0;
    std::vector<Real> q_;
    std::vector<int> always_from_;
    std::vector<Real> v0_;
    std::vector<Real> vm1_;
    std::vector<StrategyClause> strategy_;
    std::map<std::vector<int>, Real> memo_;
    std::map<std::pair<int, Rational>, Rational> memo_exact_;
};

// Spec-level convenience wrappers. Each builds a throwaway solver; callers
// with many queries should hold a GameSolver.
inline double q_threshold(int n_objects, int n) {
    return to_double(GameSolver<double>(n_objects).q(n));
}

inline double stop_now_reward(int n_objects, int n, double p) {
    if (n < 0 || n > n_objects || p < 0.0 || p > 1.0) throw std::invalid_argument("stop_now_reward: bad state");
    return static_cast<double>(n) / n_objects * p;
}

inline double one_step_reward_w(int n_objects, int n, double p) {
    return GameSolver<double>(n_objects).one_step_reward(n, p);
}

inline double value_v(int n_objects, const PosteriorState& state) {
    GameSolver<double> solver(n_objects);
    return solver.value_state(state.moment, state.count, state.p);
}

inline int pre_threshold_n0(int n_objects) { return GameSolver<double>(n_objects).n0(); }

// Rational engine for N <= 12 (exact oracle cross-checks), double beyond.
inline GameSolution solve_game(int n_objects) {
    if (n_objects <= 12) return GameSolver<Rational>(n_objects).solution();
    return GameSolver<double>(n_objects).solution();
}

} // namespace stackstop
