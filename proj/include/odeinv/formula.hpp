#pragma once

#include "odeinv/term.hpp"

#include <memory>
#include <string>
#include <vector>

namespace odeinv {

// Atomic comparison with 0 on the right: lhs = 0, lhs >= 0, or lhs > 0.
// <=, <, != are desugared by the parser (sign flip resp. disjunction of
// strict inequalities).
enum class Rel { Eq, Geq, Gt };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

enum class FormulaKind { Atom, And, Or, Not, True, False };

struct FormulaNode {
  FormulaKind kind;
  Term lhs;  // Atom
  Rel rel = Rel::Eq;
  std::vector<Formula> children;
};

Formula f_true();
Formula f_false();
Formula mk_atom(Term lhs, Rel rel, const SymbolRegistry& reg = SymbolRegistry::builtin());
Formula mk_and(std::vector<Formula> fs);
Formula mk_or(std::vector<Formula> fs);
Formula mk_not(Formula f);
// rendered as Or(Not(a), b); printers display it as an implication
Formula mk_implies(Formula a, Formula b);

bool formula_eq(const Formula& a, const Formula& b);
std::string formula_str(const Formula& f);

Formula parse_formula(const std::string& text,
                      const SymbolRegistry& reg = SymbolRegistry::builtin());

std::set<std::string> formula_vars(const Formula& f);

bool is_quantifier_free_semianalytic(const Formula& f);  // always true for this grammar

// Structural substitution of variables inside every atom.
Formula formula_substitute(const Formula& f, const std::map<std::string, Term>& map,
                           const SymbolRegistry& reg = SymbolRegistry::builtin());

// ---------------------------------------------------------------------------
// Disjunctive normal form. Equations are encoded as the nonstrict pair
// (e >= 0, -e >= 0). True is one empty disjunct, False has none.
// ---------------------------------------------------------------------------

struct Disjunct {
  std::vector<Term> nonstrict;  // each e >= 0
  std::vector<Term> strict;     // each e > 0
};

struct DNF {
  std::vector<Disjunct> disjuncts;
};

struct DnfCapExceeded : std::runtime_error {
  explicit DnfCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::size_t kDefaultDnfCap = 4096;

DNF to_dnf(const Formula& f, std::size_t cap = kDefaultDnfCap,
           const SymbolRegistry& reg = SymbolRegistry::builtin());

Formula dnf_to_formula(const DNF& d, const SymbolRegistry& reg = SymbolRegistry::builtin());

// Negation in matched normal form: a DNF for "not P" obtained by negating
// every literal and distributing conjunctions over disjunctions in a fixed
// syntactic order, so the progress-formula duality can be checked against it.
DNF negate_matched(const DNF& p, std::size_t cap = kDefaultDnfCap,
                   const SymbolRegistry& reg = SymbolRegistry::builtin());

// True when every literal of every disjunct is strict.
bool dnf_strict_only(const DNF& d);

}  // namespace odeinv
