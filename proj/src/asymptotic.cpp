#include "stackstop/asymptotic.hpp"

#include <cmath>
#include <stdexcept>

namespace stackstop {

namespace {

const double kInvE = std::exp(-1.0);

// w^a(t, m) = t(-m ln t + 1 - t)/(m+1) as a LogPoly.
LogPoly w_approx_poly(int m) {
    const double d = m + 1.0;
    LogPoly f = LogPoly::term(-m / d, 1, 1);
    f += LogPoly::term(1.0 / d, 1, 0);
    f += LogPoly::term(-1.0 / d, 2, 0);
    return f;
}

} // namespace

double asymptotic_q(double t) {
    if (t < kInvE - 1e-12 || t > 1.0 + 1e-12) {
        throw std::invalid_argument("asymptotic_q: need e^-1 <= t <= 1");
    }
    if (t >= 1.0) return 0.0;
    return (1.0 - t) / (2.0 - t + std::log(t));
}

double solve_threshold_t(int m) {
    if (m < 1) throw std::invalid_argument("solve_threshold_t: need m >= 1");
    // t -> exp((1-m-t)/m) contracts on (0,1): |d/dt| = t/m < 1.
    double t = 0.5;
    for (int it = 0; it < 10000; ++it) {
        const double next = std::exp((1.0 - m - t) / m);
        if (std::abs(next - t) < 1e-12) return next;
        t = next;
    }
    throw std::runtime_error("solve_threshold_t: no convergence");
}

namespace {

// v(t,-1) over the given breaks by backward anchored integration:
// on [b_j, b_{j+1}) with anchor V = v(b_{j+1}, -1),
//   v(t,-1) = t [ V/b_{j+1} + integral_t^{b_{j+1}} f_j(s)/s^2 ds ],
// f being the value function entered when Player 1 accepts.
PiecewiseLogPoly integrate_against_p1(const PiecewiseLogPoly& f) {
    PiecewiseLogPoly out;
    out.breaks = f.breaks;
    out.pieces.resize(f.pieces.size());
    double anchor = 0.0; // v(1, -1) = 0
    for (int j = static_cast<int>(f.pieces.size()) - 1; j >= 0; --j) {
        const double hi = f.breaks[j + 1];
        const LogPoly F2 = f.pieces[j].shifted(-2).antiderivative();
        LogPoly piece = LogPoly::term(anchor / hi + F2.eval(hi), 1, 0);
        piece += (F2 * -1.0).shifted(1);
        out.pieces[j] = piece;
        anchor = piece.eval(f.breaks[j]);
    }
    return out;
}

} // namespace

UpperBoundResult upper_bound() {
    UpperBoundResult r;
    r.t1 = solve_threshold_t(1);
    const double t1 = r.t1;
    r.c1 = 1.0 - t1 - 0.5 * t1 * t1;
    r.c2 = t1 + t1 * t1 + t1 * t1 * t1 / 3.0 - 1.0;
    r.c3 = (3.0 * t1 * t1 + 2.0 * t1 * t1 * t1 - 5.0) / 6.0;
    r.t0_u = std::exp(r.c3 - 1.0);

    r.u2.breaks = {kInvE, t1, 1.0};
    // Below t1 the rank-2 continuation solves to c1 t + t ln^2 t / 2; at or
    // above t1 the next candidate is accepted, so u(t,2) = (z(t)+y(t))/2.
    LogPoly low = LogPoly::term(r.c1, 1, 0);
    low += LogPoly::term(0.5, 1, 2);
    LogPoly high = LogPoly::term(-0.5, 1, 1);
    high += LogPoly::term(0.5, 1, 0);
    high += LogPoly::term(-0.5, 2, 0);
    r.u2.pieces = {low, high};

    r.u_m1 = integrate_against_p1(r.u2);
    return r;
}

LowerBoundResult lower_bound(int k) {
    if (k < 0 || k > 8) throw std::invalid_argument("lower_bound: supported range is 0 <= k <= 8");
    LowerBoundResult r;
    r.k = k;
    for (int m = 1; m <= k + 1; ++m) r.thresholds.push_back(solve_threshold_t(m));
    const double t_last = r.thresholds[k]; // t_{k+1}

    // Ascending breaks: e^-1, t_{k+1}, t_k, ..., t_1, 1. Interval j sits
    // inside the accept region of candidate m+1 iff j >= k+1-m.
    std::vector<double> breaks{kInvE};
    for (int m = k + 1; m >= 1; --m) breaks.push_back(r.thresholds[m - 1]);
    breaks.push_back(1.0);
    const int n_intervals = k + 2;

    r.v.assign(k + 1, PiecewiseLogPoly{});
    for (int m = k; m >= 0; --m) {
        auto& vm = r.v[m];
        vm.breaks = breaks;
        vm.pieces.assign(n_intervals, LogPoly{});
        for (int j = k + 1 - m; j < n_intervals; ++j) vm.pieces[j] = w_approx_poly(m);
        if (m == k) {
            // A rejected candidate below t_{k+1} does not change a saturated
            // memory, so the value is flat there.
            const double c = ((static_cast<double>(k) * k + k + 1) * t_last - t_last * t_last) /
                             ((k + 1.0) * (k + 1.0));
            vm.pieces[0] = LogPoly::constant(c);
            continue;
        }
        const double t_next = r.thresholds[m]; // t_{m+1}
        LogPoly tail = LogPoly::term(-(m / (m + 1.0)) * std::log(t_next), 1, 0);
        tail += LogPoly::term((1.0 / t_next - 1.0) / (m + 1.0), 2, 0);
        double c2 = 0.0, c3 = 0.0; // integrals of v_{m+1}/s^2, /s^3 from the interval top to t_{m+1}
        for (int j = k - m; j >= 0; --j) {
            const LogPoly& f = r.v[m + 1].pieces[j];
            const LogPoly F2 = f.shifted(-2).antiderivative();
            const LogPoly F3 = f.shifted(-3).antiderivative();
            const double hi = breaks[j + 1];
            LogPoly piece = tail;
            piece += LogPoly::term((m / (m + 1.0)) * (c2 + F2.eval(hi)), 1, 0);
            piece += (F2 * -(m / (m + 1.0))).shifted(1);
            piece += LogPoly::term((2.0 / (m + 1.0)) * (c3 + F3.eval(hi)), 2, 0);
            piece += (F3 * -(2.0 / (m + 1.0))).shifted(2);
            vm.pieces[j] = piece;
            c2 += F2.eval(hi) - F2.eval(breaks[j]);
            c3 += F3.eval(hi) - F3.eval(breaks[j]);
        }
    }

    r.v_m1 = integrate_against_p1(r.v[0]);
    const double at_inv_e = r.v_m1.eval(kInvE);
    r.pre_coeff = std::exp(1.0) * at_inv_e - 1.0;
    r.t0_k = std::exp(r.pre_coeff - 1.0);
    r.value = r.t0_k;
    return r;
}

double truncation_bound(int k) {
    if (k < 0) throw std::invalid_argument("truncation_bound: need k >= 0");
    const double t = solve_threshold_t(k + 1);
    const double lambda = 2.0 * (1.0 - t) / (k + 1.0);
    double cdf = 0.0, term = std::exp(-lambda);
    for (int i = 0; i <= k + 1; ++i) {
        cdf += term;
        term *= lambda / (i + 1);
    }
    return (k * t + t * t) / ((k + 1.0) * (k + 1.0)) * (1.0 - cdf);
}

} // namespace stackstop
