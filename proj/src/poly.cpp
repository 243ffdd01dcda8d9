#include "odeinv/poly.hpp"

#include <sstream>

namespace odeinv {

unsigned total_degree(const Exponents& e) {
  unsigned d = 0;
  for (auto x : e) d += x;
  return d;
}

int cmp_degrevlex(const Exponents& a, const Exponents& b) {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  // reverse-lex tie break: compare from the last indeterminate; the one with
  // the SMALLER trailing exponent is larger
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  if (c != 0) p.terms_.emplace(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::indet(std::size_t nvars, std::size_t index, unsigned exp) {
  Poly p(nvars);
  Exponents e(nvars, 0);
  e[index] = exp;
  if (exp == 0) return constant(nvars, 1);
  p.terms_.emplace(std::move(e), Rational(1));
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

const Exponents& Poly::leading_monomial() const {
  if (terms_.empty()) throw std::logic_error("leading monomial of zero polynomial");
  return terms_.begin()->first;
}

const Rational& Poly::leading_coeff() const {
  if (terms_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

unsigned Poly::degree() const {
  if (terms_.empty()) return 0;
  return total_degree(terms_.begin()->first);
}

void Poly::add_term(const Exponents& mono, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(mono, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  out += o;
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  Poly out = *this;
  out -= o;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator*(const Poly& o) const {
  Poly out(nvars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Exponents m(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Poly Poly::scaled(const Rational& c) const {
  Poly out(nvars_);
  if (c == 0) return out;
  for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
  return out;
}

Poly Poly::times_monomial(const Exponents& mono, const Rational& c) const {
  Poly out(nvars_);
  if (c == 0) return out;
  for (const auto& [m, k] : terms_) {
    Exponents e(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) e[i] = m[i] + mono[i];
    out.terms_.emplace(std::move(e), k * c);
  }
  return out;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] > 0) v *= rat_pow(point.at(i), m[i]);
    acc += v;
  }
  return acc;
}

Term Poly::to_term(const RingContext& ctx) const {
  if (terms_.empty()) return mk_const(0);
  std::vector<Term> summands;
  for (const auto& [m, c] : terms_) {
    std::vector<Term> factors;
    if (c != 1 || total_degree(m) == 0) factors.push_back(mk_const(c));
    for (std::size_t i = 0; i < nvars_; ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) factors.push_back(ctx.indets.at(i));
    summands.push_back(mk_mul(std::move(factors)));
  }
  return mk_add(std::move(summands));
}

namespace {

Poly from_term_rec(const Term& t, const RingContext& ctx, const SymbolRegistry& reg) {
  switch (t->kind) {
    case TermKind::Const:
      return Poly::constant(ctx.size(), t->value);
    case TermKind::Var: {
      auto idx = ctx.index_of(t);
      if (!idx) throw UnmappedSubterm("variable not in ring context: " + t->name);
      return Poly::indet(ctx.size(), *idx);
    }
    case TermKind::Add: {
      Poly acc(ctx.size());
      for (const auto& a : t->args) acc += from_term_rec(a, ctx, reg);
      return acc;
    }
    case TermKind::Mul: {
      Poly acc = Poly::constant(ctx.size(), 1);
      for (const auto& a : t->args) acc = acc * from_term_rec(a, ctx, reg);
      return acc;
    }
    case TermKind::App: {
      // applications are atomic indeterminates; match modulo argument
      // normalization
      std::vector<Term> nargs;
      nargs.reserve(t->args.size());
      for (const auto& a : t->args) nargs.push_back(normalize(a, reg));
      Term atom = mk_app(t->name, std::move(nargs));
      auto idx = ctx.index_of(atom);
      if (!idx) throw UnmappedSubterm("application not in ring context: " + term_str(atom));
      return Poly::indet(ctx.size(), *idx);
    }
  }
  return Poly(ctx.size());
}

}  // namespace

Poly poly_from_term(const Term& t, const RingContext& ctx, const SymbolRegistry& reg) {
  return from_term_rec(t, ctx, reg);
}

std::string poly_str(const Poly& p, const RingContext& ctx) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational coeff = c;
    if (!first) {
      os << (coeff < 0 ? " - " : " + ");
      if (coeff < 0) coeff = -coeff;
    }
    first = false;
    bool printed_coeff = false;
    if (coeff != 1 || total_degree(m) == 0) {
      os << rat_str(coeff);
      printed_coeff = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (printed_coeff) os << "*";
      printed_coeff = true;
      os << term_str(ctx.indets[i]);
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

}  // namespace odeinv
