#include "odeinv/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace odeinv {

namespace {

Term make_node(TermKind kind, std::string name, Rational value, std::vector<Term> args) {
  auto node = std::make_shared<TermNode>();
  node->kind = kind;
  node->name = std::move(name);
  node->value = std::move(value);
  node->args = std::move(args);
  return node;
}

}  // namespace

Term mk_var(std::string name) { return make_node(TermKind::Var, std::move(name), 0, {}); }
Term mk_const(Rational value) { return make_node(TermKind::Const, "", std::move(value), {}); }
Term mk_const(long value) { return mk_const(Rational(value)); }

Term mk_add(std::vector<Term> terms) {
  if (terms.empty()) return mk_const(0);
  if (terms.size() == 1) return terms[0];
  return make_node(TermKind::Add, "", 0, std::move(terms));
}

Term mk_mul(std::vector<Term> factors) {
  if (factors.empty()) return mk_const(1);
  if (factors.size() == 1) return factors[0];
  return make_node(TermKind::Mul, "", 0, std::move(factors));
}

Term mk_app(std::string symbol, std::vector<Term> args) {
  return make_node(TermKind::App, std::move(symbol), 0, std::move(args));
}

Term mk_neg(Term a) { return mk_mul(mk_const(-1), std::move(a)); }
Term mk_sub(Term a, Term b) { return mk_add(std::move(a), mk_neg(std::move(b))); }

Term mk_pow(Term base, unsigned exp) {
  if (exp == 0) return mk_const(1);
  std::vector<Term> factors(exp, base);
  return mk_mul(std::move(factors));
}

int term_cmp(const Term& a, const Term& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case TermKind::Var:
      return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
    case TermKind::Const:
      return a->value < b->value ? -1 : (a->value == b->value ? 0 : 1);
    case TermKind::App: {
      int c = a->name.compare(b->name);
      if (c != 0) return c < 0 ? -1 : 1;
      break;
    }
    default:
      break;
  }
  if (a->args.size() != b->args.size()) return a->args.size() < b->args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    int c = term_cmp(a->args[i], b->args[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool term_eq(const Term& a, const Term& b) { return term_cmp(a, b) == 0; }

bool is_zero_const(const Term& t) { return t->kind == TermKind::Const && t->value == 0; }
bool is_const(const Term& t) { return t->kind == TermKind::Const; }

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<const TermNode*> stack{t.get()};
  while (!stack.empty()) {
    const TermNode* n = stack.back();
    stack.pop_back();
    if (n->kind == TermKind::Var) out.insert(n->name);
    for (const auto& a : n->args) stack.push_back(a.get());
  }
  return out;
}

namespace {
void collect_apps_rec(const Term& t, std::vector<Term>& out) {
  for (const auto& a : t->args) collect_apps_rec(a, out);
  if (t->kind == TermKind::App) {
    for (const auto& seen : out)
      if (term_eq(seen, t)) return;
    out.push_back(t);
  }
}
}  // namespace

std::vector<Term> collect_apps(const Term& t) {
  std::vector<Term> out;
  collect_apps_rec(t, out);
  return out;
}

Term substitute(const Term& t, const std::map<std::string, Term>& map) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = map.find(t->name);
      return it == map.end() ? t : it->second;
    }
    case TermKind::Const:
      return t;
    default: {
      std::vector<Term> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (const auto& a : t->args) {
        Term s = substitute(a, map);
        changed |= (s.get() != a.get());
        args.push_back(std::move(s));
      }
      if (!changed) return t;
      return make_node(t->kind, t->name, t->value, std::move(args));
    }
  }
}

// ---------------------------------------------------------------------------
// Function symbols
// ---------------------------------------------------------------------------

Term formal_arg(unsigned index) { return mk_var("@" + std::to_string(index)); }

bool is_formal_arg(const Term& t, unsigned& index_out) {
  if (t->kind != TermKind::Var || t->name.empty() || t->name[0] != '@') return false;
  index_out = static_cast<unsigned>(std::stoul(t->name.substr(1)));
  return true;
}

namespace {
void mentioned_symbols(const Term& t, std::set<std::string>& out) {
  if (t->kind == TermKind::App) out.insert(t->name);
  for (const auto& a : t->args) mentioned_symbols(a, out);
}
}  // namespace

SymbolRegistry::SymbolRegistry(std::vector<FunctionSymbol> symbols) : symbols_(std::move(symbols)) {
  for (const auto& sym : symbols_) {
    if (sym.partials.size() != sym.arity)
      throw std::invalid_argument("symbol " + sym.name + ": one derivative template per argument required");
    std::set<std::string> mentioned;
    for (const auto& tpl : sym.partials) mentioned_symbols(tpl, mentioned);
    for (const auto& m : mentioned) {
      if (!find(m) && m != sym.name)
        throw std::invalid_argument("symbol " + sym.name + ": derivative template mentions unregistered symbol " + m);
    }
  }
}

const SymbolRegistry& SymbolRegistry::builtin() {
  static const SymbolRegistry reg = [] {
    FunctionSymbol exp_sym{"exp", 1, {mk_app("exp", {formal_arg(0)})}};
    FunctionSymbol sin_sym{"sin", 1, {mk_app("cos", {formal_arg(0)})}};
    FunctionSymbol cos_sym{"cos", 1, {mk_neg(mk_app("sin", {formal_arg(0)}))}};
    return SymbolRegistry({exp_sym, sin_sym, cos_sym});
  }();
  return reg;
}

const FunctionSymbol* SymbolRegistry::find(const std::string& name) const {
  for (const auto& s : symbols_)
    if (s.name == name) return &s;
  return nullptr;
}

const FunctionSymbol& SymbolRegistry::require(const std::string& name) const {
  const FunctionSymbol* s = find(name);
  if (!s) throw std::invalid_argument("unregistered function symbol: " + name);
  return *s;
}

std::vector<std::string> SymbolRegistry::chain_group(const std::string& name) const {
  require(name);
  std::set<std::string> group{name};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& member : std::set<std::string>(group)) {
      const FunctionSymbol& sym = require(member);
      std::set<std::string> mentioned;
      for (const auto& tpl : sym.partials) mentioned_symbols(tpl, mentioned);
      for (const auto& m : mentioned)
        if (group.insert(m).second) grew = true;
    }
  }
  std::vector<std::string> ordered;
  for (const auto& s : symbols_)
    if (group.count(s.name)) ordered.push_back(s.name);
  return ordered;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class TermParser {
 public:
  TermParser(const std::string& text, const SymbolRegistry& reg) : text_(text), reg_(reg) {}

  Term parse() {
    Term t = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  Term parse_expr() {
    skip_ws();
    bool neg = accept('-');
    Term t = parse_product();
    if (neg) t = mk_neg(t);
    std::vector<Term> terms{t};
    for (;;) {
      if (accept('+')) {
        terms.push_back(parse_product());
      } else if (accept('-')) {
        terms.push_back(mk_neg(parse_product()));
      } else {
        break;
      }
    }
    return mk_add(std::move(terms));
  }

  Term parse_product() {
    std::vector<Term> factors{parse_power()};
    while (accept('*')) factors.push_back(parse_power());
    return mk_mul(std::move(factors));
  }

  Term parse_power() {
    Term base = parse_primary();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      if (pos_ >= text_.size() ||
          !(std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-'))
        throw ParseError("exponent must be a natural number", at);
      if (text_[pos_] == '-') throw ParseError("exponent must be a natural number", at);
      unsigned long exp = std::stoul(read_digits());
      return mk_pow(std::move(base), static_cast<unsigned>(exp));
    }
    return base;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError("expected digits", start);
    return text_.substr(start, pos_ - start);
  }

  Term parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = parse_expr();
      expect(')');
      return t;
    }
    if (c == '-') {
      ++pos_;
      return mk_neg(parse_power());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string np = read_digits();
      if (pos_ < text_.size() && text_[pos_] == '.')
        throw ParseError("decimal literals are not supported; write an integer fraction like 9/2", pos_);
      Integer p(np);
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_ws();
        std::size_t at = pos_;
        std::string nq = read_digits();
        Integer q(nq);
        if (q == 0) throw ParseError("zero denominator", at);
        return mk_const(Rational(p, q));
      }
      return mk_const(Rational(p));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string ident = text_.substr(start, pos_ - start);
      if (peek('(')) {
        const FunctionSymbol* sym = reg_.find(ident);
        if (!sym) throw ParseError("unknown function symbol: " + ident, start);
        expect('(');
        std::vector<Term> args{parse_expr()};
        while (accept(',')) args.push_back(parse_expr());
        expect(')');
        if (args.size() != sym->arity)
          throw ParseError("function " + ident + " expects " + std::to_string(sym->arity) + " argument(s)", start);
        return mk_app(ident, std::move(args));
      }
      return mk_var(ident);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  const std::string& text_;
  const SymbolRegistry& reg_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(const std::string& text, const SymbolRegistry& reg) {
  return TermParser(text, reg).parse();
}

// ---------------------------------------------------------------------------
// Normalization: expand into a sum of monomials over atoms.
// An atom is a variable or an application subterm with normalized arguments.
// ---------------------------------------------------------------------------

namespace {

struct AtomCmp {
  bool operator()(const Term& a, const Term& b) const { return term_cmp(a, b) < 0; }
};

// Monomial: sorted (atom, exponent) pairs, exponents > 0.
using NMonomial = std::vector<std::pair<Term, unsigned>>;

struct NMonomialCmp {
  // degree-lexicographic: higher total degree first, ties broken by the atom
  // sequence so output order is deterministic
  bool operator()(const NMonomial& a, const NMonomial& b) const {
    unsigned da = 0, db = 0;
    for (const auto& [t, e] : a) da += e;
    for (const auto& [t, e] : b) db += e;
    if (da != db) return da > db;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      int c = term_cmp(a[i].first, b[j].first);
      if (c != 0) return c < 0;
      if (a[i].second != b[j].second) return a[i].second > b[j].second;
      ++i;
      ++j;
    }
    return false;  // equal total degree and equal prefix: identical monomials
  }
};

using NPoly = std::map<NMonomial, Rational, NMonomialCmp>;

void npoly_add_term(NPoly& p, const NMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

NPoly npoly_add(const NPoly& a, const NPoly& b) {
  NPoly out = a;
  for (const auto& [m, c] : b) npoly_add_term(out, m, c);
  return out;
}

NMonomial nmono_mul(const NMonomial& a, const NMonomial& b) {
  NMonomial out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && term_cmp(a[i].first, b[j].first) < 0)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || term_cmp(b[j].first, a[i].first) < 0) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

NPoly npoly_mul(const NPoly& a, const NPoly& b) {
  NPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) npoly_add_term(out, nmono_mul(ma, mb), ca * cb);
  return out;
}

NPoly to_npoly(const Term& t, const SymbolRegistry& reg);

NPoly atom_poly(const Term& atom) {
  NPoly p;
  p.emplace(NMonomial{{atom, 1}}, Rational(1));
  return p;
}

NPoly to_npoly(const Term& t, const SymbolRegistry& reg) {
  switch (t->kind) {
    case TermKind::Var:
      return atom_poly(t);
    case TermKind::Const: {
      NPoly p;
      if (t->value != 0) p.emplace(NMonomial{}, t->value);
      return p;
    }
    case TermKind::Add: {
      NPoly p;
      for (const auto& a : t->args) p = npoly_add(p, to_npoly(a, reg));
      return p;
    }
    case TermKind::Mul: {
      NPoly p;
      p.emplace(NMonomial{}, Rational(1));
      for (const auto& a : t->args) p = npoly_mul(p, to_npoly(a, reg));
      return p;
    }
    case TermKind::App: {
      std::vector<Term> nargs;
      nargs.reserve(t->args.size());
      for (const auto& a : t->args) nargs.push_back(normalize(a, reg));
      return atom_poly(mk_app(t->name, std::move(nargs)));
    }
  }
  return {};
}

Term npoly_to_term(const NPoly& p) {
  if (p.empty()) return mk_const(0);
  std::vector<Term> summands;
  for (const auto& [m, c] : p) {
    std::vector<Term> factors;
    if (c != 1 || m.empty()) factors.push_back(mk_const(c));
    for (const auto& [atom, exp] : m)
      for (unsigned e = 0; e < exp; ++e) factors.push_back(atom);
    summands.push_back(mk_mul(std::move(factors)));
  }
  return mk_add(std::move(summands));
}

}  // namespace

Term normalize(const Term& t, const SymbolRegistry& reg) {
  return npoly_to_term(to_npoly(t, reg));
}

bool normal_eq(const Term& a, const Term& b, const SymbolRegistry& reg) {
  return term_eq(normalize(mk_sub(a, b), reg), mk_const(0));
}

Term partial_derivative(const Term& t, const std::string& var, const SymbolRegistry& reg) {
  struct Deriv {
    const std::string& var;
    const SymbolRegistry& reg;

    Term operator()(const Term& t) const {
      switch (t->kind) {
        case TermKind::Var:
          return mk_const(t->name == var ? 1 : 0);
        case TermKind::Const:
          return mk_const(0);
        case TermKind::Add: {
          std::vector<Term> terms;
          for (const auto& a : t->args) terms.push_back((*this)(a));
          return mk_add(std::move(terms));
        }
        case TermKind::Mul: {
          std::vector<Term> summands;
          for (std::size_t i = 0; i < t->args.size(); ++i) {
            std::vector<Term> factors;
            for (std::size_t j = 0; j < t->args.size(); ++j)
              factors.push_back(i == j ? (*this)(t->args[j]) : t->args[j]);
            summands.push_back(mk_mul(std::move(factors)));
          }
          return mk_add(std::move(summands));
        }
        case TermKind::App: {
          const FunctionSymbol& sym = reg.require(t->name);
          std::map<std::string, Term> inst;
          for (unsigned i = 0; i < sym.arity; ++i) inst["@" + std::to_string(i)] = t->args[i];
          std::vector<Term> summands;
          for (unsigned i = 0; i < sym.arity; ++i) {
            Term tpl = substitute(sym.partials[i], inst);
            summands.push_back(mk_mul(std::move(tpl), (*this)(t->args[i])));
          }
          return mk_add(std::move(summands));
        }
      }
      return mk_const(0);
    }
  };
  return normalize(Deriv{var, reg}(t), reg);
}

// ---------------------------------------------------------------------------
// Printing: deterministic, round-trips through parse_term. Powers are
// re-grouped from repeated factors for readability.
// ---------------------------------------------------------------------------

namespace {

void print_term(std::ostream& os, const Term& t, int parent_prec);

// precedence: 0 add, 1 mul, 2 power/primary
void print_product(std::ostream& os, const std::vector<Term>& factors) {
  // group equal adjacent factors into powers
  std::size_t i = 0;
  bool first = true;
  while (i < factors.size()) {
    std::size_t j = i;
    while (j < factors.size() && term_eq(factors[j], factors[i])) ++j;
    if (!first) os << "*";
    first = false;
    unsigned exp = static_cast<unsigned>(j - i);
    print_term(os, factors[i], exp > 1 ? 2 : 1);
    if (exp > 1) os << "^" << exp;
    i = j;
  }
}

void print_term(std::ostream& os, const Term& t, int parent_prec) {
  switch (t->kind) {
    case TermKind::Var:
      os << t->name;
      break;
    case TermKind::Const: {
      bool wrap = (t->value < 0 && parent_prec > 0) || (den(t->value) != 1 && parent_prec >= 2);
      if (wrap) os << "(";
      os << rat_str(t->value);
      if (wrap) os << ")";
      break;
    }
    case TermKind::Add: {
      bool wrap = parent_prec > 0;
      if (wrap) os << "(";
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        const Term& a = t->args[i];
        if (i > 0) {
          // render leading negative coefficients with a minus sign
          if (a->kind == TermKind::Const && a->value < 0) {
            os << " - " << rat_str(-a->value);
            continue;
          }
          if (a->kind == TermKind::Mul && a->args[0]->kind == TermKind::Const &&
              a->args[0]->value < 0) {
            os << " - ";
            std::vector<Term> rest = a->args;
            if (a->args[0]->value == -1) {
              rest.erase(rest.begin());
            } else {
              rest[0] = mk_const(-a->args[0]->value);
            }
            print_product(os, rest);
            continue;
          }
          os << " + ";
        }
        print_term(os, a, 0);
      }
      if (wrap) os << ")";
      break;
    }
    case TermKind::Mul: {
      bool wrap = parent_prec > 1;
      if (wrap) os << "(";
      if (t->args.size() >= 2 && t->args[0]->kind == TermKind::Const && t->args[0]->value == -1) {
        os << "-";
        std::vector<Term> rest(t->args.begin() + 1, t->args.end());
        print_product(os, rest);
      } else {
        print_product(os, t->args);
      }
      if (wrap) os << ")";
      break;
    }
    case TermKind::App: {
      os << t->name << "(";
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i > 0) os << ", ";
        print_term(os, t->args[i], 0);
      }
      os << ")";
      break;
    }
  }
}

}  // namespace

std::string term_str(const Term& t) {
  std::ostringstream os;
  print_term(os, t, 0);
  return os.str();
}

}  // namespace odeinv
