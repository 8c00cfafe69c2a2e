#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace stackstop {

// Exact arithmetic for the small-N oracle cross-checks (N <= 12). The
// solvers are templated on the scalar type; Rational instantiations and
// the permutation oracle must agree to the last digit.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline std::string fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

template <class Real>
Real ratio(long long num, long long den);

template <>
inline double ratio<double>(long long num, long long den) {
    return static_cast<double>(num) / static_cast<double>(den);
}

template <>
inline Rational ratio<Rational>(long long num, long long den) {
    return Rational(num, den);
}

// ceil(num/den) for positive den; exact in both instantiations.
inline long long ceil_div(const Rational& x) {
    BigInt n = numerator(x), d = denominator(x);
    BigInt q = n / d;
    if (n > 0 && q * d != n) ++q;
    return q.convert_to<long long>();
}

} // namespace stackstop
