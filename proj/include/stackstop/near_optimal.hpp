#pragma once
#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "stackstop/classical_secretary.hpp"
#include "stackstop/kernels.hpp"

namespace stackstop {

struct NearOptimalSolution {
    int n_objects = 0;
    int n_star = 0;
    int m0 = 0;
    int n0_a = 0;
    std::vector<int> n_m;               // acceptance thresholds, m = 1..m0
    double value = 0.0;                 // v^a(0, -1)
    std::vector<std::vector<double>> va; // va[m][n] for m = 0..m0-1, n = 0..N (0 below n*+m)
    std::vector<double> va_m1;          // v^a(n, -1), n = 0..N-1
    bool exact = false;
    Rational value_exact;
};

// The count-based approximation: the posterior of the m-th candidate is
// replaced by its floor m/(m+1), collapsing the state to (moment, count).
template <class Real>
class NearOptimalSolver {
public:
    explicit NearOptimalSolver(int n_objects)
        : n_(checked(n_objects)), sums_(n_objects), p1_(solve_p1<Real>(n_objects)) {
        n_star_ = p1_.threshold;
        build_thresholds();
        build_values();
    }

    int n_objects() const { return n_; }
    int n_star() const { return n_star_; }
    int m0() const { return m0_; }
    int n0_a() const { return n0_a_; }
    const std::vector<int>& n_m() const { return n_m_; }

    // K(n): the m-th candidate is accepted at moment n iff m >= K(n).
    int count_threshold(int n) const {
        if (n <= n_star_ || n > n_) throw std::invalid_argument("count_threshold: need n* < n <= N");
        const Real s1 = sums_.s1(n);
        if (!(s1 < Real(1))) throw std::invalid_argument("count_threshold: S1 >= 1");
        return ceil_of(sums_.s2(n) / (Real(1) - s1));
    }

    // w^a(n, m): estimated reward from accepting the next candidate.
    Real w_approx(int n, int m) const {
        if (n < n_star_ || n >= n_ || m < 0) throw std::invalid_argument("w_approx: need n* <= n < N, m >= 0");
        return accept_tail(n_, n + 1, n, ratio<Real>(m, m + 1), sums_);
    }

    // v^a(n, m) for m in [-1, m0-1].
    Real va(int n, int m) const {
        if (m == -1) {
            if (n < 0 || n >= n_) throw std::invalid_argument("va: need 0 <= n < N for m = -1");
            return vam1_[n];
        }
        if (m < 0 || m >= m0_ || n < n_star_ + m || n > n_) throw std::invalid_argument("va: state out of range");
        return va_[m][n];
    }

    Real value() const { return vam1_[0]; }

    NearOptimalSolution solution() const {
        NearOptimalSolution out;
        out.n_objects = n_;
        out.n_star = n_star_;
        out.m0 = m0_;
        out.n0_a = n0_a_;
        out.n_m = n_m_;
        out.value = to_double(value());
        out.va.assign(m0_, std::vector<double>(n_ + 1, 0.0));
        for (int m = 0; m < m0_; ++m)
            for (int n = n_star_ + m; n <= n_; ++n) out.va[m][n] = to_double(va_[m][n]);
        out.va_m1.assign(n_, 0.0);
        for (int n = 0; n < n_; ++n) out.va_m1[n] = to_double(vam1_[n]);
        if constexpr (std::is_same_v<Real, Rational>) {
            out.exact = true;
            out.value_exact = value();
        }
        return out;
    }

private:
    static int checked(int n_objects) {
        if (n_objects < 3 || n_objects > 500) {
            throw std::invalid_argument("NearOptimalSolver: supported range is 3 <= N <= 500");
        }
        return n_objects;
    }

    static int ceil_of(const Real& x) {
        if constexpr (std::is_same_v<Real, Rational>) {
            return static_cast<int>(ceil_div(x));
        } else {
            return static_cast<int>(std::ceil(x));
        }
    }

    void build_thresholds() {
        // m0: smallest m already at or past its own threshold when the m-th
        // candidate first becomes possible (moment n*+m). K(N) = 0, so both
        // searches terminate.
        m0_ = 0;
        for (int m = 1; m <= n_ - n_star_; ++m) {
            if (count_threshold(n_star_ + m) <= m) {
                m0_ = m;
                break;
            }
        }
        n_m_.clear();
        for (int m = 1; m <= m0_; ++m) {
            for (int n = n_star_ + 1; n <= n_; ++n) {
                if (count_threshold(n) <= m) {
                    n_m_.push_back(n);
                    break;
                }
            }
        }
    }

    // Acceptance threshold for the (m+1)-th candidate; 0 when it is always
    // accepted (m+1 >= m0).
    int next_threshold(int m) const {
        if (m + 1 >= m0_) return 0;
        return n_m_[m]; // n_{m+1}
    }

    void build_values() {
        va_.assign(m0_, std::vector<Real>(n_ + 1, Real(0)));
        for (int m = m0_ - 1; m >= 0; --m) {
            const int thr = next_threshold(m);
            const Real p = ratio<Real>(m, m + 1);
            for (int n = n_; n >= n_star_ + m; --n) {
                if (n == n_) {
                    va_[m][n] = Real(0);
                } else if (thr == 0 || n >= thr - 1) {
                    va_[m][n] = accept_tail(n_, n + 1, n, p, sums_);
                } else {
                    Real acc = accept_tail(n_, thr, n, p, sums_);
                    for (int k = n + 1; k < thr; ++k) {
                        acc += candidate_arrival(n, k, p) * va_[m + 1][k];
                    }
                    va_[m][n] = acc;
                }
            }
        }
        vam1_.assign(n_, Real(0));
        for (int n = n_ - 1; n >= n_star_ - 1; --n) {
            Real acc(0);
            for (int k = n + 1; k <= n_; ++k) acc += p1_arrival<Real>(n, k) * va_[0][k];
            vam1_[n] = acc;
        }
        const Real anchor = vam1_[n_star_ - 1];
        n0_a_ = n_star_;
        for (int n = 1; n <= n_star_ - 1; ++n) {
            const Real lhs = Real(n_) * anchor / Real(n_star_ - 1) + sums_.s1(n) - sums_.s1(n_star_ - 1);
            if (lhs <= Real(1)) {
                n0_a_ = n;
                break;
            }
        }
        for (int n = n_star_ - 2; n >= 1; --n) {
            if (n >= n0_a_ - 1) {
                vam1_[n] = ratio<Real>(n, n_) * (sums_.s1(n) - sums_.s1(n_star_ - 1)) +
                           ratio<Real>(n, n_star_ - 1) * anchor;
            } else {
                vam1_[n] = vam1_[n0_a_ - 1];
            }
        }
        vam1_[0] = (n0_a_ == 1) ? ratio<Real>(1, n_) : vam1_[n0_a_ - 1];
    }

    int n_;
    TailSums<Real> sums_;
    P1Solution<Real> p1_;
    int n_star_ = 0;
    int m0_ = 0;
    int n0_a_ = 0;
    std::vector<int> n_m_;
    std::vector<std::vector<Real>> va_;
    std::vector<Real> vam1_;
};

inline int count_threshold_K(int n_objects, int n) {
    return NearOptimalSolver<double>(n_objects).count_threshold(n);
}

inline double w_approx(int n_objects, int n, int m) {
    return to_double(NearOptimalSolver<double>(n_objects).w_approx(n, m));
}

inline NearOptimalSolution solve_near_optimal(int n_objects) {
    if (n_objects <= 12) return NearOptimalSolver<Rational>(n_objects).solution();
    return NearOptimalSolver<double>(n_objects).solution();
}

} // namespace stackstop
