#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace odeinv {

using Integer = boost::multiprecision::cpp_int;

// Exact rational arithmetic. cpp_rational keeps values reduced with a
// positive denominator, which is exactly the invariant the engine needs.
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational rat_pow(const Rational& base, unsigned exp);

// Parses "p" or "p/q" with optional leading '-'. Rejects anything else
// (notably decimal literals).
std::optional<Rational> rat_parse(const std::string& text);

std::string rat_str(const Rational& q);

// Largest integer n with n <= q (resp. smallest with n >= q).
Integer rat_floor(const Rational& q);
Integer rat_ceil(const Rational& q);

}  // namespace odeinv
