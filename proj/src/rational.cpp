#include "odeinv/rational.hpp"

#include <cctype>

namespace odeinv {

Rational rat_pow(const Rational& base, unsigned exp) {
  Rational acc(1);
  Rational b = base;
  unsigned e = exp;
  while (e > 0) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

std::optional<Rational> rat_parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-') {
    neg = true;
    ++i;
  }
  std::size_t start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == start) return std::nullopt;
  Integer p(text.substr(start, i - start));
  Integer q(1);
  if (i < text.size()) {
    if (text[i] != '/') return std::nullopt;
    ++i;
    std::size_t dstart = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == dstart || i != text.size()) return std::nullopt;
    q = Integer(text.substr(dstart));
    if (q == 0) return std::nullopt;
  }
  Rational r(p, q);
  return neg ? Rational(-r) : r;
}

std::string rat_str(const Rational& q) {
  std::string s = num(q).str();
  if (den(q) != 1) {
    s += "/";
    s += den(q).str();
  }
  return s;
}

Integer rat_floor(const Rational& q) {
  Integer n = num(q), d = den(q);
  Integer quot = n / d;
  if (n < 0 && quot * d != n) --quot;
  return quot;
}

Integer rat_ceil(const Rational& q) { return -rat_floor(-q); }

}  // namespace odeinv
