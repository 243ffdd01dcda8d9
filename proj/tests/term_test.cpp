#include <doctest.h>

#include "odeinv/term.hpp"

#include <random>

using namespace odeinv;

namespace {

Term P(const std::string& s) { return parse_term(s); }

Term N(const std::string& s) { return normalize(P(s)); }

bool same(const Term& a, const Term& b) { return term_eq(a, b); }

// random term generator for property tests
Term random_term(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 1 : 5);
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> var(0, 2);
  static const char* names[] = {"x", "y", "z"};
  switch (kind(rng)) {
    case 0:
      return mk_var(names[var(rng)]);
    case 1:
      return mk_const(Rational(coeff(rng), 1 + std::uniform_int_distribution<int>(0, 3)(rng)));
    case 2:
      return mk_add(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 3:
      return mk_mul(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 4:
      return mk_app("sin", {random_term(rng, depth - 1)});
    default:
      return mk_app("exp", {random_term(rng, depth - 1)});
  }
}

}  // namespace

TEST_CASE("parse basics") {
  CHECK(same(P("0"), mk_const(0)));
  CHECK(same(P("9/2"), mk_const(Rational(9, 2))));
  // subtraction desugars to Add/Mul/Const
  Term t = P("1 - u^2 - v^2");
  CHECK(t->kind == TermKind::Add);
  CHECK(normal_eq(t, mk_sub(mk_const(1), mk_add(mk_pow(mk_var("u"), 2), mk_pow(mk_var("v"), 2)))));
  // application nesting
  Term e = P("exp(sin(x))");
  REQUIRE(e->kind == TermKind::App);
  CHECK(e->name == "exp");
  REQUIRE(e->args[0]->kind == TermKind::App);
  CHECK(e->args[0]->name == "sin");
  CHECK(e->args[0]->args[0]->name == "x");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(P("1.5"), ParseError);
  CHECK_THROWS_AS(P("tan(x)"), ParseError);
  CHECK_THROWS_AS(P("x^y"), ParseError);
  CHECK_THROWS_AS(P("x +"), ParseError);
  CHECK_THROWS_AS(P("(x"), ParseError);
  CHECK_THROWS_AS(P("1/0"), ParseError);
  try {
    P("x + $");
  } catch (const ParseError& e) {
    CHECK(e.pos == 4);
  }
}

TEST_CASE("normalize identities") {
  CHECK(same(N("x + 0"), mk_var("x")));
  CHECK(same(N("x*1"), mk_var("x")));
  CHECK(same(N("x - x"), mk_const(0)));
  CHECK(same(N("2*v*v - 2*u*u + 9/2"), N("2*v^2 - 2*u^2 + 9/2")));
  CHECK(same(N("sin(x)*exp(y) + exp(y)*sin(x)"), N("2*sin(x)*exp(y)")));
  // arguments normalize before atoms are compared
  CHECK(same(N("sin(x + 0)"), N("sin(x)")));
  CHECK(same(N("(u + v)^2"), N("u^2 + 2*u*v + v^2")));
}

TEST_CASE("normalize is idempotent and deterministic on random terms") {
  std::mt19937 rng(20240811);
  for (int i = 0; i < 10000; ++i) {
    Term t = random_term(rng, 6);
    Term n1 = normalize(t);
    Term n2 = normalize(n1);
    CAPTURE(term_str(t));
    REQUIRE(same(n1, n2));
  }
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    Term t = normalize(random_term(rng, 5));
    Term back = parse_term(term_str(t));
    CAPTURE(term_str(t));
    REQUIRE(same(normalize(back), t));
  }
}

TEST_CASE("partial derivatives") {
  CHECK(same(partial_derivative(P("sin(x)"), "x"), N("cos(x)")));
  CHECK(same(partial_derivative(P("7"), "x"), mk_const(0)));
  CHECK(same(partial_derivative(P("cos(x)"), "x"), N("-sin(x)")));
  CHECK(same(partial_derivative(P("exp(x*y)"), "x"), N("y*exp(x*y)")));
  CHECK(same(partial_derivative(P("x^3 + 2*x"), "x"), N("3*x^2 + 2")));
  CHECK(same(partial_derivative(P("sin(x)"), "y"), mk_const(0)));
}

TEST_CASE("derivative linearity") {
  std::mt19937 rng(99);
  for (int i = 0; i < 200; ++i) {
    Term s = random_term(rng, 4);
    Term t = random_term(rng, 4);
    Rational a(std::uniform_int_distribution<int>(-5, 5)(rng));
    Rational b(std::uniform_int_distribution<int>(-5, 5)(rng));
    Term lhs = partial_derivative(mk_add(mk_mul(mk_const(a), s), mk_mul(mk_const(b), t)), "x");
    Term rhs = normalize(mk_add(mk_mul(mk_const(a), partial_derivative(s, "x")),
                                mk_mul(mk_const(b), partial_derivative(t, "x"))));
    CAPTURE(term_str(s));
    CAPTURE(term_str(t));
    REQUIRE(same(lhs, rhs));
  }
}

TEST_CASE("registry rejects sin without cos") {
  FunctionSymbol sin_only{"sin", 1, {mk_app("cos", {formal_arg(0)})}};
  CHECK_THROWS_AS(SymbolRegistry({sin_only}), std::invalid_argument);
}

TEST_CASE("chain groups") {
  const auto& reg = SymbolRegistry::builtin();
  CHECK(reg.chain_group("exp") == std::vector<std::string>{"exp"});
  CHECK(reg.chain_group("sin") == std::vector<std::string>{"sin", "cos"});
  CHECK(reg.chain_group("cos") == std::vector<std::string>{"sin", "cos"});
}
