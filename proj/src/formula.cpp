#include "odeinv/formula.hpp"

#include <cctype>
#include <sstream>

namespace odeinv {

namespace {
Formula make_node(FormulaKind kind, Term lhs, Rel rel, std::vector<Formula> children) {
  auto node = std::make_shared<FormulaNode>();
  node->kind = kind;
  node->lhs = std::move(lhs);
  node->rel = rel;
  node->children = std::move(children);
  return node;
}
}  // namespace

Formula f_true() {
  static const Formula t = make_node(FormulaKind::True, nullptr, Rel::Eq, {});
  return t;
}

Formula f_false() {
  static const Formula f = make_node(FormulaKind::False, nullptr, Rel::Eq, {});
  return f;
}

Formula mk_atom(Term lhs, Rel rel, const SymbolRegistry& reg) {
  Term n = normalize(lhs, reg);
  if (is_const(n)) {
    // constant atoms collapse to truth values
    const Rational& v = n->value;
    bool truth = rel == Rel::Eq ? v == 0 : (rel == Rel::Geq ? v >= 0 : v > 0);
    return truth ? f_true() : f_false();
  }
  return make_node(FormulaKind::Atom, std::move(n), rel, {});
}

Formula mk_and(std::vector<Formula> fs) {
  std::vector<Formula> kept;
  for (auto& f : fs) {
    if (f->kind == FormulaKind::False) return f_false();
    if (f->kind == FormulaKind::True) continue;
    kept.push_back(std::move(f));
  }
  if (kept.empty()) return f_true();
  if (kept.size() == 1) return kept[0];
  return make_node(FormulaKind::And, nullptr, Rel::Eq, std::move(kept));
}

Formula mk_or(std::vector<Formula> fs) {
  std::vector<Formula> kept;
  for (auto& f : fs) {
    if (f->kind == FormulaKind::True) return f_true();
    if (f->kind == FormulaKind::False) continue;
    kept.push_back(std::move(f));
  }
  if (kept.empty()) return f_false();
  if (kept.size() == 1) return kept[0];
  return make_node(FormulaKind::Or, nullptr, Rel::Eq, std::move(kept));
}

Formula mk_not(Formula f) {
  if (f->kind == FormulaKind::True) return f_false();
  if (f->kind == FormulaKind::False) return f_true();
  if (f->kind == FormulaKind::Not) return f->children[0];
  return make_node(FormulaKind::Not, nullptr, Rel::Eq, {std::move(f)});
}

Formula mk_implies(Formula a, Formula b) {
  if (a->kind == FormulaKind::True) return b;
  return mk_or({mk_not(std::move(a)), std::move(b)});
}

bool formula_eq(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  if (a->kind == FormulaKind::Atom) return a->rel == b->rel && term_eq(a->lhs, b->lhs);
  if (a->children.size() != b->children.size()) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!formula_eq(a->children[i], b->children[i])) return false;
  return true;
}

std::set<std::string> formula_vars(const Formula& f) {
  std::set<std::string> out;
  if (f->kind == FormulaKind::Atom) return free_vars(f->lhs);
  for (const auto& c : f->children)
    for (const auto& v : formula_vars(c)) out.insert(v);
  return out;
}

bool is_quantifier_free_semianalytic(const Formula&) { return true; }

Formula formula_substitute(const Formula& f, const std::map<std::string, Term>& map,
                           const SymbolRegistry& reg) {
  switch (f->kind) {
    case FormulaKind::Atom:
      return mk_atom(substitute(f->lhs, map), f->rel, reg);
    case FormulaKind::True:
    case FormulaKind::False:
      return f;
    default: {
      std::vector<Formula> children;
      children.reserve(f->children.size());
      for (const auto& c : f->children) children.push_back(formula_substitute(c, map, reg));
      if (f->kind == FormulaKind::And) return mk_and(std::move(children));
      if (f->kind == FormulaKind::Or) return mk_or(std::move(children));
      return mk_not(std::move(children[0]));
    }
  }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

const char* rel_str(Rel r) {
  switch (r) {
    case Rel::Eq:
      return " = 0";
    case Rel::Geq:
      return " >= 0";
    case Rel::Gt:
      return " > 0";
  }
  return "";
}

void print_formula(std::ostream& os, const Formula& f, int parent_prec);

// precedence: or 0, and 1, not/atom 2
void print_formula(std::ostream& os, const Formula& f, int parent_prec) {
  switch (f->kind) {
    case FormulaKind::True:
      os << "true";
      return;
    case FormulaKind::False:
      os << "false";
      return;
    case FormulaKind::Atom:
      os << term_str(f->lhs) << rel_str(f->rel);
      return;
    case FormulaKind::Not:
      os << "!(";
      print_formula(os, f->children[0], 0);
      os << ")";
      return;
    case FormulaKind::And: {
      bool wrap = parent_prec > 1;
      if (wrap) os << "(";
      for (std::size_t i = 0; i < f->children.size(); ++i) {
        if (i) os << " & ";
        print_formula(os, f->children[i], 2);
      }
      if (wrap) os << ")";
      return;
    }
    case FormulaKind::Or: {
      // implication sugar: Or(Not(a), b) displays as a -> b
      if (f->children.size() == 2 && f->children[0]->kind == FormulaKind::Not) {
        os << "(";
        print_formula(os, f->children[0]->children[0], 1);
        os << " -> ";
        print_formula(os, f->children[1], 1);
        os << ")";
        return;
      }
      bool wrap = parent_prec > 0;
      if (wrap) os << "(";
      for (std::size_t i = 0; i < f->children.size(); ++i) {
        if (i) os << " | ";
        print_formula(os, f->children[i], 1);
      }
      if (wrap) os << ")";
      return;
    }
  }
}

}  // namespace

std::string formula_str(const Formula& f) {
  std::ostringstream os;
  print_formula(os, f, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser: infix relations over terms, &, |, !, parentheses, true/false.
// ---------------------------------------------------------------------------

namespace {

class FormulaParser {
 public:
  FormulaParser(const std::string& text, const SymbolRegistry& reg) : text_(text), reg_(reg) {}

  Formula parse() {
    Formula f = parse_or();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input in formula", pos_);
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_word(const std::string& w) {
    skip_ws();
    if (text_.compare(pos_, w.size(), w) == 0) {
      std::size_t end = pos_ + w.size();
      if (end == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[end]))) {
        pos_ = end;
        return true;
      }
    }
    return false;
  }

  Formula parse_or() {
    std::vector<Formula> fs{parse_and()};
    while (accept('|')) fs.push_back(parse_and());
    return mk_or(std::move(fs));
  }

  Formula parse_and() {
    std::vector<Formula> fs{parse_unary()};
    while (accept('&')) fs.push_back(parse_unary());
    return mk_and(std::move(fs));
  }

  Formula parse_unary() {
    skip_ws();
    if (accept('!')) return mk_not(parse_unary());
    if (accept_word("true")) return f_true();
    if (accept_word("false")) return f_false();
    if (peek_is_group()) {
      std::size_t save = pos_;
      ++pos_;  // consume '('
      try {
        Formula f = parse_or();
        if (!accept(')')) throw ParseError("expected ')'", pos_);
        return f;
      } catch (const ParseError&) {
        // not a parenthesized formula; reparse as a comparison whose lhs
        // begins with a parenthesized term
        pos_ = save;
      }
    }
    return parse_comparison();
  }

  // lookahead: '(' that opens a formula group rather than a term
  bool peek_is_group() {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == '(';
  }

  Formula parse_comparison() {
    skip_ws();
    std::size_t start = pos_;
    // scan the lhs term up to a relation symbol at depth 0
    int depth = 0;
    std::size_t i = pos_;
    auto is_rel_start = [&](char c) { return c == '=' || c == '<' || c == '>' || c == '!'; };
    while (i < text_.size()) {
      char c = text_[i];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && (c == '&' || c == '|')) break;
      if (depth == 0 && is_rel_start(c)) {
        if (c == '!' && (i + 1 >= text_.size() || text_[i + 1] != '=')) break;
        // found the relation
        std::string lhs_text = text_.substr(start, i - start);
        std::string rel;
        rel += c;
        ++i;
        if (i < text_.size() && text_[i] == '=') {
          rel += '=';
          ++i;
        }
        // scan rhs until &, |, ) at depth 0
        std::size_t rstart = i;
        int rdepth = 0;
        while (i < text_.size()) {
          char rc = text_[i];
          if (rc == '(') ++rdepth;
          if (rc == ')') {
            if (rdepth == 0) break;
            --rdepth;
          }
          if (rdepth == 0 && (rc == '&' || rc == '|')) break;
          ++i;
        }
        std::string rhs_text = text_.substr(rstart, i - rstart);
        pos_ = i;
        return build_atom(lhs_text, rel, rhs_text, start);
      }
      ++i;
    }
    throw ParseError("expected a comparison", start);
  }

  Formula build_atom(const std::string& lhs_text, const std::string& rel,
                     const std::string& rhs_text, std::size_t at) {
    Term lhs, rhs;
    try {
      lhs = parse_term(lhs_text, reg_);
      rhs = parse_term(rhs_text, reg_);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), at + e.pos);
    }
    Term diff = mk_sub(lhs, rhs);
    Term flipped = mk_sub(rhs, lhs);
    if (rel == "=" || rel == "==") return mk_atom(diff, Rel::Eq, reg_);
    if (rel == ">=") return mk_atom(diff, Rel::Geq, reg_);
    if (rel == ">") return mk_atom(diff, Rel::Gt, reg_);
    if (rel == "<=") return mk_atom(flipped, Rel::Geq, reg_);
    if (rel == "<") return mk_atom(flipped, Rel::Gt, reg_);
    if (rel == "!=")
      return mk_or({mk_atom(diff, Rel::Gt, reg_), mk_atom(flipped, Rel::Gt, reg_)});
    throw ParseError("unknown relation " + rel, at);
  }

  const std::string& text_;
  const SymbolRegistry& reg_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text, const SymbolRegistry& reg) {
  return FormulaParser(text, reg).parse();
}

// ---------------------------------------------------------------------------
// DNF
// ---------------------------------------------------------------------------

namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap)
    throw DnfCapExceeded("disjunct count " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

// negation normal form with negations eliminated at the atoms:
// !(e=0) -> e>0 | -e>0, !(e>=0) -> -e>0, !(e>0) -> -e>=0
Formula nnf(const Formula& f, bool neg, const SymbolRegistry& reg) {
  switch (f->kind) {
    case FormulaKind::True:
      return neg ? f_false() : f_true();
    case FormulaKind::False:
      return neg ? f_true() : f_false();
    case FormulaKind::Atom: {
      if (!neg) return f;
      Term m = mk_neg(f->lhs);
      switch (f->rel) {
        case Rel::Eq:
          return mk_or({mk_atom(f->lhs, Rel::Gt, reg), mk_atom(m, Rel::Gt, reg)});
        case Rel::Geq:
          return mk_atom(m, Rel::Gt, reg);
        case Rel::Gt:
          return mk_atom(m, Rel::Geq, reg);
      }
      return f;
    }
    case FormulaKind::Not:
      return nnf(f->children[0], !neg, reg);
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> children;
      children.reserve(f->children.size());
      for (const auto& c : f->children) children.push_back(nnf(c, neg, reg));
      bool is_and = (f->kind == FormulaKind::And) != neg;
      return is_and ? mk_and(std::move(children)) : mk_or(std::move(children));
    }
  }
  return f;
}

void push_atom(Disjunct& d, const Term& lhs, Rel rel) {
  switch (rel) {
    case Rel::Eq:
      d.nonstrict.push_back(lhs);
      d.nonstrict.push_back(normalize(mk_neg(lhs)));
      break;
    case Rel::Geq:
      d.nonstrict.push_back(lhs);
      break;
    case Rel::Gt:
      d.strict.push_back(lhs);
      break;
  }
}

DNF dnf_of_nnf(const Formula& f, std::size_t cap, const SymbolRegistry& reg) {
  switch (f->kind) {
    case FormulaKind::True:
      return DNF{{Disjunct{}}};
    case FormulaKind::False:
      return DNF{{}};
    case FormulaKind::Atom: {
      Disjunct d;
      push_atom(d, f->lhs, f->rel);
      return DNF{{std::move(d)}};
    }
    case FormulaKind::Or: {
      DNF out;
      for (const auto& c : f->children) {
        DNF part = dnf_of_nnf(c, cap, reg);
        for (auto& d : part.disjuncts) out.disjuncts.push_back(std::move(d));
        check_cap(out.disjuncts.size(), cap);
      }
      return out;
    }
    case FormulaKind::And: {
      DNF acc{{Disjunct{}}};
      for (const auto& c : f->children) {
        DNF part = dnf_of_nnf(c, cap, reg);
        DNF next;
        for (const auto& da : acc.disjuncts) {
          for (const auto& db : part.disjuncts) {
            Disjunct merged = da;
            merged.nonstrict.insert(merged.nonstrict.end(), db.nonstrict.begin(), db.nonstrict.end());
            merged.strict.insert(merged.strict.end(), db.strict.begin(), db.strict.end());
            next.disjuncts.push_back(std::move(merged));
            check_cap(next.disjuncts.size(), cap);
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
    case FormulaKind::Not:
      throw std::logic_error("negation survived NNF");
  }
  return DNF{};
}

}  // namespace

DNF to_dnf(const Formula& f, std::size_t cap, const SymbolRegistry& reg) {
  return dnf_of_nnf(nnf(f, false, reg), cap, reg);
}

Formula dnf_to_formula(const DNF& d, const SymbolRegistry& reg) {
  std::vector<Formula> disjuncts;
  for (const auto& dj : d.disjuncts) {
    std::vector<Formula> atoms;
    for (const auto& e : dj.nonstrict) atoms.push_back(mk_atom(e, Rel::Geq, reg));
    for (const auto& e : dj.strict) atoms.push_back(mk_atom(e, Rel::Gt, reg));
    disjuncts.push_back(mk_and(std::move(atoms)));
  }
  return mk_or(std::move(disjuncts));
}

DNF negate_matched(const DNF& p, std::size_t cap, const SymbolRegistry& reg) {
  // not P in conjunctive form: for each disjunct, one clause of negated
  // literals; then distribute in source order
  struct Literal {
    Term lhs;
    bool strict;
  };
  std::vector<std::vector<Literal>> clauses;
  for (const auto& d : p.disjuncts) {
    std::vector<Literal> clause;
    for (const auto& e : d.nonstrict) clause.push_back({normalize(mk_neg(e), reg), true});
    for (const auto& e : d.strict) clause.push_back({normalize(mk_neg(e), reg), false});
    clauses.push_back(std::move(clause));
  }

  DNF out;
  // empty conjunction (P == False) negates to True: one empty disjunct
  std::vector<std::size_t> pick(clauses.size(), 0);
  for (const auto& c : clauses)
    if (c.empty()) return DNF{{}};  // a disjunct of P is True, so not P is False
  for (;;) {
    Disjunct d;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      const Literal& lit = clauses[i][pick[i]];
      (lit.strict ? d.strict : d.nonstrict).push_back(lit.lhs);
    }
    out.disjuncts.push_back(std::move(d));
    check_cap(out.disjuncts.size(), cap);
    // advance odometer
    std::size_t i = clauses.size();
    for (;;) {
      if (i == 0) return out;
      --i;
      if (++pick[i] < clauses[i].size()) break;
      pick[i] = 0;
    }
  }
}

bool dnf_strict_only(const DNF& d) {
  for (const auto& dj : d.disjuncts)
    if (!dj.nonstrict.empty()) return false;
  return true;
}

}  // namespace odeinv
