#pragma once

#include "odeinv/rational.hpp"

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace odeinv {

// ---------------------------------------------------------------------------
// Term trees for the extended term language: variables, rational constants,
// sums, products, and applications of registered function symbols.
// Subtraction and natural powers exist only in the concrete syntax; they are
// desugared by the parser. There is no division except inside rational
// literals.
// ---------------------------------------------------------------------------

enum class TermKind { Var, Const, Add, Mul, App };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TermKind kind;
  std::string name;        // Var: variable name; App: symbol name
  Rational value;          // Const only
  std::vector<Term> args;  // Add/Mul operands, App arguments
};

Term mk_var(std::string name);
Term mk_const(Rational value);
Term mk_const(long value);
Term mk_add(std::vector<Term> terms);
Term mk_mul(std::vector<Term> factors);
Term mk_app(std::string symbol, std::vector<Term> args);

inline Term mk_add(Term a, Term b) { return mk_add(std::vector<Term>{std::move(a), std::move(b)}); }
inline Term mk_mul(Term a, Term b) { return mk_mul(std::vector<Term>{std::move(a), std::move(b)}); }
Term mk_neg(Term a);
Term mk_sub(Term a, Term b);
Term mk_pow(Term base, unsigned exp);

// Structural total order on raw trees; the tie-breaker everywhere the engine
// needs deterministic output.
int term_cmp(const Term& a, const Term& b);
bool term_eq(const Term& a, const Term& b);
bool is_zero_const(const Term& t);
bool is_const(const Term& t);

std::string term_str(const Term& t);

std::set<std::string> free_vars(const Term& t);

// Every application subterm of t, deduplicated, innermost first.
std::vector<Term> collect_apps(const Term& t);

// Replaces variables by terms; names absent from the map stay untouched.
Term substitute(const Term& t, const std::map<std::string, Term>& map);

// ---------------------------------------------------------------------------
// Function symbols and their syntactic partial derivatives.
// ---------------------------------------------------------------------------

// Formal argument placeholder used inside derivative templates.
Term formal_arg(unsigned index);
bool is_formal_arg(const Term& t, unsigned& index_out);

struct FunctionSymbol {
  std::string name;
  unsigned arity = 1;
  // partials[i] is a term over formal_arg(0..arity-1) representing the
  // derivative with respect to argument i.
  std::vector<Term> partials;
};

// Registry of fixed function symbols. Construction verifies the syntactic
// partial derivative condition: every symbol mentioned by a derivative
// template must itself be registered (this is what rejects sin without cos).
class SymbolRegistry {
 public:
  explicit SymbolRegistry(std::vector<FunctionSymbol> symbols);

  // exp, sin, cos with the usual derivative templates.
  static const SymbolRegistry& builtin();

  const FunctionSymbol* find(const std::string& name) const;
  const FunctionSymbol& require(const std::string& name) const;

  // Registration-ordered closure of {name} under mentions in derivative
  // templates: exp -> [exp], sin -> [sin, cos], cos -> [sin, cos].
  std::vector<std::string> chain_group(const std::string& name) const;

  const std::vector<FunctionSymbol>& symbols() const { return symbols_; }

 private:
  std::vector<FunctionSymbol> symbols_;
};

// ---------------------------------------------------------------------------
// Parsing, normalization, differentiation.
// ---------------------------------------------------------------------------

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), pos(position) {}
  std::size_t pos;
};

Term parse_term(const std::string& text, const SymbolRegistry& reg = SymbolRegistry::builtin());

// Canonical form: a sum of monomials with rational coefficients over the
// atoms of t (variables plus application subterms with normalized arguments),
// flattened and constant-folded, monomials in a fixed degree-lexicographic
// order. Idempotent.
Term normalize(const Term& t, const SymbolRegistry& reg = SymbolRegistry::builtin());

bool normal_eq(const Term& a, const Term& b, const SymbolRegistry& reg = SymbolRegistry::builtin());

// Symbolic partial derivative; applications differentiate through their
// registered templates. Result is normalized.
Term partial_derivative(const Term& t, const std::string& var,
                        const SymbolRegistry& reg = SymbolRegistry::builtin());

}  // namespace odeinv
