#pragma once
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stackstop {

// Linear combinations of t^a ln^i(t) with integer a and i >= 0. The family
// is closed under the integral transforms of the continuous-time value
// recursions, so every piece of those value functions stays in closed form.
class LogPoly {
public:
    LogPoly() = default;

    static LogPoly term(double c, int power, int log_power) {
        LogPoly f;
        if (c != 0.0) f.coeffs_[{power, log_power}] = c;
        return f;
    }
    static LogPoly constant(double c) { return term(c, 0, 0); }

    LogPoly& operator+=(const LogPoly& o) {
        for (const auto& [key, c] : o.coeffs_) add(key.first, key.second, c);
        return *this;
    }
    LogPoly operator+(const LogPoly& o) const {
        LogPoly r = *this;
        r += o;
        return r;
    }
    LogPoly operator-(const LogPoly& o) const { return *this + o * -1.0; }
    LogPoly operator*(double s) const {
        LogPoly r;
        if (s != 0.0) {
            for (const auto& [key, c] : coeffs_) r.coeffs_[key] = c * s;
        }
        return r;
    }

    // Multiply by t^d.
    LogPoly shifted(int d) const {
        LogPoly r;
        for (const auto& [key, c] : coeffs_) r.coeffs_[{key.first + d, key.second}] = c;
        return r;
    }

    // An antiderivative (constant of integration zero).
    LogPoly antiderivative() const {
        LogPoly r;
        for (const auto& [key, c] : coeffs_) r.accumulate_antiderivative(key.first, key.second, c);
        return r;
    }

    double eval(double t) const {
        if (!(t > 0.0)) throw std::domain_error("LogPoly::eval: t must be positive");
        const double lt = std::log(t);
        double acc = 0.0;
        for (const auto& [key, c] : coeffs_) {
            acc += c * std::pow(t, key.first) * std::pow(lt, key.second);
        }
        return acc;
    }

    double integral(double lo, double hi) const {
        const LogPoly F = antiderivative();
        return F.eval(hi) - F.eval(lo);
    }

    bool empty() const { return coeffs_.empty(); }
    const std::map<std::pair<int, int>, double>& coefficients() const { return coeffs_; }

private:
    void add(int a, int i, double c) {
        auto& slot = coeffs_[{a, i}];
        slot += c;
        if (slot == 0.0) coeffs_.erase({a, i});
    }

    // integral of c t^a ln^i t: ln^{i+1}/(i+1) when a = -1, otherwise
    // t^{a+1} ln^i /(a+1) - (i/(a+1)) * integral of t^a ln^{i-1}.
    void accumulate_antiderivative(int a, int i, double c) {
        if (a == -1) {
            add(0, i + 1, c / (i + 1));
            return;
        }
        add(a + 1, i, c / (a + 1));
        if (i > 0) accumulate_antiderivative(a, i - 1, -c * i / (a + 1));
    }

    std::map<std::pair<int, int>, double> coeffs_;
};

// A function on [breaks.front(), breaks.back()] given piecewise by LogPolys;
// piece j covers [breaks[j], breaks[j+1]).
struct PiecewiseLogPoly {
    std::vector<double> breaks;
    std::vector<LogPoly> pieces;

    double eval(double t) const {
        if (breaks.size() < 2 || pieces.size() + 1 != breaks.size()) {
            throw std::logic_error("PiecewiseLogPoly: malformed");
        }
        if (t < breaks.front() - 1e-12 || t > breaks.back() + 1e-12) {
            throw std::domain_error("PiecewiseLogPoly::eval: t outside domain");
        }
        std::size_t j = 0;
        while (j + 2 < breaks.size() && t >= breaks[j + 1]) ++j;
        return pieces[j].eval(t);
    }
};

} // namespace stackstop
