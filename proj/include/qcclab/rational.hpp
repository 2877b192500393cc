#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace qcclab {

// GMP-backed; exact mode spends most of its time in these operations.
// Expression templates are off so that `auto` and lambdas returning sums hold
// values, not references to temporaries.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// "p/q", or "p" when q == 1.
inline std::string to_string(const Rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace qcclab
