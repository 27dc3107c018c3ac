#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace rentwist {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

// Accepts "p", "p/q" and plain decimals such as "-0.25" or "1e-3".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

// Best rational approximation with denominator <= max_den (continued fractions).
Rational rationalize(double value, long max_den);

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(double v) { return v == 0.0; }

}  // namespace rentwist
