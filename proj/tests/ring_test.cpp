#include <doctest.h>

#include "odeinv/groebner.hpp"
#include "odeinv/poly.hpp"

#include <random>

using namespace odeinv;

namespace {

RingContext ctx_xy() { return RingContext{{mk_var("x"), mk_var("y")}}; }

Poly PP(const std::string& s, const RingContext& ctx) { return poly_from_term(parse_term(s), ctx); }

Poly combine(const std::vector<Poly>& cof, const std::vector<Poly>& gens) {
  Poly acc(gens[0].nvars());
  for (std::size_t i = 0; i < gens.size(); ++i) acc += cof[i] * gens[i];
  return acc;
}

}  // namespace

TEST_CASE("poly_from_term expands exactly") {
  RingContext ctx{{mk_var("u"), mk_var("v")}};
  Poly p = PP("1 - u^2 - v^2", ctx);
  REQUIRE(p.terms().size() == 3);
  Exponents unit(2, 0);
  CHECK(p.terms().at(unit) == 1);
  CHECK(p.terms().at(Exponents{2, 0}) == -1);
  CHECK(p.terms().at(Exponents{0, 2}) == -1);

  RingContext cx{{mk_var("x")}};
  Poly q = PP("x + x^2", cx);
  CHECK(q.terms().size() == 2);
  CHECK(q.terms().at(Exponents{1}) == 1);
  CHECK(q.terms().at(Exponents{2}) == 1);
}

TEST_CASE("poly_from_term maps applications to atomic indeterminates") {
  Term sx = parse_term("sin(x)");
  Term cx = parse_term("cos(x)");
  Term esx = parse_term("exp(sin(x))");
  RingContext ctx{{mk_var("x"), sx, cx, esx}};
  Poly p = poly_from_term(esx, ctx);
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms().at(Exponents{0, 0, 0, 1}) == 1);

  CHECK_THROWS_AS(poly_from_term(parse_term("exp(x)"), ctx), UnmappedSubterm);
}

TEST_CASE("poly round-trip through terms") {
  RingContext ctx = ctx_xy();
  Poly p = PP("3*x^2*y - y + 5/7", ctx);
  Poly q = poly_from_term(p.to_term(ctx), ctx);
  CHECK(p == q);
}

TEST_CASE("groebner single generator") {
  RingContext cx{{mk_var("x")}};
  auto gb = groebner({PP("x^2", cx)});
  REQUIRE(gb.basis.size() == 1);
  CHECK(gb.basis[0] == PP("x^2", cx));
  REQUIRE(gb.transform.size() == 1);
  CHECK(gb.transform[0][0] == Poly::constant(1, 1));
}

TEST_CASE("groebner [x, y-x] reduces to [x, y]") {
  RingContext ctx = ctx_xy();
  std::vector<Poly> gens{PP("x", ctx), PP("y - x", ctx)};
  auto gb = groebner(gens);
  REQUIRE(gb.basis.size() == 2);
  bool saw_x = false, saw_y = false;
  for (std::size_t j = 0; j < gb.basis.size(); ++j) {
    if (gb.basis[j] == PP("x", ctx)) saw_x = true;
    if (gb.basis[j] == PP("y", ctx)) saw_y = true;
    CHECK(combine(gb.transform[j], gens) == gb.basis[j]);
  }
  CHECK(saw_x);
  CHECK(saw_y);
}

TEST_CASE("groebner [x*y - 1, y^2 - 1] contains x - y") {
  RingContext ctx = ctx_xy();
  std::vector<Poly> gens{PP("x*y - 1", ctx), PP("y^2 - 1", ctx)};
  auto gb = groebner(gens);
  // x - y = y*(x*y - 1) - x*(y^2 - 1), so it must reduce to zero
  Poly target = PP("x - y", ctx);
  CHECK(reduce_by_basis(target, gb.basis).is_zero());
  for (std::size_t j = 0; j < gb.basis.size(); ++j)
    CHECK(combine(gb.transform[j], gens) == gb.basis[j]);
}

TEST_CASE("every generator reduces to zero under its basis") {
  RingContext ctx = ctx_xy();
  std::mt19937 rng(5150);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int iter = 0; iter < 40; ++iter) {
    std::vector<Poly> gens;
    for (int k = 0; k < 3; ++k) {
      Poly p(2);
      for (int t = 0; t < 4; ++t) {
        Exponents e{static_cast<std::uint32_t>(std::uniform_int_distribution<int>(0, 2)(rng)),
                    static_cast<std::uint32_t>(std::uniform_int_distribution<int>(0, 2)(rng))};
        p.add_term(e, Rational(c(rng)));
      }
      if (!p.is_zero()) gens.push_back(p);
    }
    if (gens.empty()) continue;
    auto gb = groebner(gens);
    for (const auto& g : gens) CHECK(reduce_by_basis(g, gb.basis).is_zero());
  }
}

TEST_CASE("ideal membership basics") {
  RingContext cx{{mk_var("x")}};
  auto m1 = ideal_membership(PP("x^2", cx), {PP("x", cx)});
  REQUIRE(m1.has_value());
  CHECK((*m1)[0] == PP("x", cx));

  auto m2 = ideal_membership(PP("1", cx), {PP("x", cx)});
  CHECK(!m2.has_value());

  auto m3 = ideal_membership(Poly(1), {PP("x^3 - x", cx)});
  REQUIRE(m3.has_value());
  CHECK((*m3)[0].is_zero());
}

TEST_CASE("membership is monotone under extra generators") {
  RingContext ctx = ctx_xy();
  Poly p = PP("x^2*y + x", ctx);
  std::vector<Poly> gens{PP("x", ctx)};
  auto m = ideal_membership(p, gens);
  REQUIRE(m.has_value());
  std::vector<Poly> more{PP("x", ctx), PP("y^3 - 2", ctx)};
  auto m2 = ideal_membership(p, more);
  REQUIRE(m2.has_value());
  CHECK(combine(*m2, more) == p);
}

TEST_CASE("membership cofactors verify on random members") {
  RingContext ctx = ctx_xy();
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> c(-3, 3);
  auto rand_poly = [&](int terms, int maxdeg) {
    Poly p(2);
    for (int t = 0; t < terms; ++t) {
      Exponents e{static_cast<std::uint32_t>(std::uniform_int_distribution<int>(0, maxdeg)(rng)),
                  static_cast<std::uint32_t>(std::uniform_int_distribution<int>(0, maxdeg)(rng))};
      p.add_term(e, Rational(c(rng)));
    }
    return p;
  };
  for (int iter = 0; iter < 30; ++iter) {
    std::vector<Poly> gens{rand_poly(3, 2), rand_poly(3, 2)};
    if (gens[0].is_zero() || gens[1].is_zero()) continue;
    // construct a member by combination
    Poly member = rand_poly(2, 1) * gens[0] + rand_poly(2, 1) * gens[1];
    auto m = ideal_membership(member, gens);
    REQUIRE(m.has_value());
    CHECK(combine(*m, gens) == member);
  }
}

TEST_CASE("step budget raises a distinct error") {
  RingContext ctx = ctx_xy();
  GroebnerOptions tiny;
  tiny.step_budget = 1;
  CHECK_THROWS_AS(groebner({PP("x^3*y - x", ctx), PP("x*y^3 - y", ctx)}, tiny), BudgetExceeded);
}
