#pragma once

#include "odeinv/rational.hpp"
#include "odeinv/term.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace odeinv {

// A ring context fixes the indeterminate set: base variables first, then
// application subterms treated as atomic indeterminates (the chain layout
// relies on this split).
struct RingContext {
  std::vector<Term> indets;

  std::size_t size() const { return indets.size(); }
  std::optional<std::size_t> index_of(const Term& t) const {
    for (std::size_t i = 0; i < indets.size(); ++i)
      if (term_eq(indets[i], t)) return i;
    return std::nullopt;
  }
};

using Exponents = std::vector<std::uint32_t>;

unsigned total_degree(const Exponents& e);

// degree-reverse-lexicographic; returns <0, 0, >0 like strcmp
int cmp_degrevlex(const Exponents& a, const Exponents& b);

struct UnmappedSubterm : std::runtime_error {
  explicit UnmappedSubterm(const std::string& what) : std::runtime_error(what) {}
};

// Sparse multivariate polynomial with exact rational coefficients over a
// fixed number of indeterminates. Never stores zero coefficients.
class Poly {
 public:
  struct MonoGreater {
    bool operator()(const Exponents& a, const Exponents& b) const {
      return cmp_degrevlex(a, b) > 0;
    }
  };
  using Map = std::map<Exponents, Rational, MonoGreater>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly indet(std::size_t nvars, std::size_t index, unsigned exp = 1);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const Map& terms() const { return terms_; }

  const Exponents& leading_monomial() const;
  const Rational& leading_coeff() const;
  unsigned degree() const;

  void add_term(const Exponents& mono, const Rational& coeff);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Poly scaled(const Rational& c) const;
  // multiply by c * x^mono
  Poly times_monomial(const Exponents& mono, const Rational& c) const;

  // Exact evaluation; point must assign every indeterminate that occurs.
  Rational eval(const std::vector<Rational>& point) const;

  // Substitute each indeterminate by a term and rebuild (no normalization).
  Term to_term(const RingContext& ctx) const;

 private:
  std::size_t nvars_ = 0;
  Map terms_;
};

// Exact polynomial expansion of a (not necessarily normalized) term. Every
// variable and application subterm must be present in the context.
Poly poly_from_term(const Term& t, const RingContext& ctx,
                    const SymbolRegistry& reg = SymbolRegistry::builtin());

std::string poly_str(const Poly& p, const RingContext& ctx);

}  // namespace odeinv
