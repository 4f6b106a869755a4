#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace gasket {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// 3^e and 5^e for any integer e, exact.
Rational pow_rational(long base, int e);

// Parses "3", "-2", "1.25", "7/3".
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

}  // namespace gasket
