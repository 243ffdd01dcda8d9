#include "odeinv/groebner.hpp"

#include <algorithm>

namespace odeinv {

namespace {

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents quotient(const Exponents& a, const Exponents& b) {
  Exponents q(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) q[i] = a[i] - b[i];
  return q;
}

Exponents mono_lcm(const Exponents& a, const Exponents& b) {
  Exponents l(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

// polynomial together with its expression over the original generators
struct Tracked {
  Poly poly;
  std::vector<Poly> row;
};

struct Budget {
  std::uint64_t left;
  void spend(const char* where) {
    if (left == 0) throw BudgetExceeded(std::string("groebner step budget exhausted in ") + where);
    --left;
  }
};

void row_sub_scaled(std::vector<Poly>& row, const std::vector<Poly>& other, const Exponents& mono,
                    const Rational& coeff) {
  for (std::size_t i = 0; i < row.size(); ++i) row[i] -= other[i].times_monomial(mono, coeff);
}

// Fully reduce t by G (top reduction repeated over all monomials); keeps the
// tracked representation in sync.
Tracked normal_form(Tracked t, const std::vector<Tracked>& G, Budget& budget) {
  Poly rem(t.poly.nvars());
  Poly work = std::move(t.poly);
  while (!work.is_zero()) {
    bool reduced = false;
    const Exponents& lm = work.leading_monomial();
    for (const auto& g : G) {
      if (g.poly.is_zero()) continue;
      if (!divides(g.poly.leading_monomial(), lm)) continue;
      budget.spend("normal_form");
      Exponents q = quotient(lm, g.poly.leading_monomial());
      Rational c = work.leading_coeff() / g.poly.leading_coeff();
      work -= g.poly.times_monomial(q, c);
      row_sub_scaled(t.row, g.row, q, c);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.add_term(lm, work.leading_coeff());
      Poly lt(work.nvars());
      lt.add_term(lm, work.leading_coeff());
      work -= lt;
    }
  }
  t.poly = std::move(rem);
  return t;
}

void make_monic(Tracked& t) {
  if (t.poly.is_zero()) return;
  Rational inv = Rational(1) / t.poly.leading_coeff();
  t.poly = t.poly.scaled(inv);
  for (auto& r : t.row) r = r.scaled(inv);
}

Poly row_combination(const std::vector<Poly>& row, const std::vector<Poly>& gens, std::size_t nvars) {
  Poly acc(nvars);
  for (std::size_t i = 0; i < gens.size(); ++i) acc += row[i] * gens[i];
  return acc;
}

}  // namespace

GroebnerBasis groebner(const std::vector<Poly>& generators, const GroebnerOptions& opts) {
  if (generators.empty()) throw std::invalid_argument("groebner: empty generator sequence");
  const std::size_t nvars = generators[0].nvars();
  for (const auto& g : generators)
    if (g.nvars() != nvars) throw std::invalid_argument("groebner: mixed ring contexts");

  Budget budget{opts.step_budget};

  std::vector<Tracked> G;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].is_zero()) continue;
    Tracked t;
    t.poly = generators[i];
    t.row.assign(generators.size(), Poly(nvars));
    t.row[i] = Poly::constant(nvars, 1);
    G.push_back(std::move(t));
  }

  // pair queue ordered by lcm degree (normal selection strategy)
  struct Pair {
    std::size_t i, j;
    unsigned lcm_deg;
  };
  std::vector<Pair> pairs;
  auto push_pairs_for = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      const Exponents& a = G[i].poly.leading_monomial();
      const Exponents& b = G[k].poly.leading_monomial();
      if (coprime(a, b)) continue;  // product criterion
      pairs.push_back({i, k, total_degree(mono_lcm(a, b))});
    }
  };
  for (std::size_t k = 0; k < G.size(); ++k) push_pairs_for(k);

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.lcm_deg != b.lcm_deg) return a.lcm_deg < b.lcm_deg;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    });
    Pair pr = *it;
    pairs.erase(it);
    budget.spend("s-polynomial");

    const Tracked& f = G[pr.i];
    const Tracked& g = G[pr.j];
    Exponents l = mono_lcm(f.poly.leading_monomial(), g.poly.leading_monomial());
    Exponents qf = quotient(l, f.poly.leading_monomial());
    Exponents qg = quotient(l, g.poly.leading_monomial());
    Rational cf = Rational(1) / f.poly.leading_coeff();
    Rational cg = Rational(1) / g.poly.leading_coeff();

    Tracked s;
    s.poly = f.poly.times_monomial(qf, cf) - g.poly.times_monomial(qg, cg);
    s.row.assign(generators.size(), Poly(nvars));
    for (std::size_t i = 0; i < generators.size(); ++i)
      s.row[i] = f.row[i].times_monomial(qf, cf) - g.row[i].times_monomial(qg, cg);

    s = normal_form(std::move(s), G, budget);
    if (!s.poly.is_zero()) {
      make_monic(s);
      G.push_back(std::move(s));
      push_pairs_for(G.size() - 1);
    }
  }

  // interreduce: drop elements whose leading monomial is divisible by
  // another's, then fully reduce each by the rest
  for (std::size_t i = 0; i < G.size();) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size(); ++j) {
      if (i == j) continue;
      const Exponents& lmi = G[i].poly.leading_monomial();
      const Exponents& lmj = G[j].poly.leading_monomial();
      if (!divides(lmj, lmi)) continue;
      if (lmi == lmj && j > i) continue;  // equal leading monomials: keep the earlier one
      redundant = true;
      break;
    }
    if (redundant)
      G.erase(G.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  for (std::size_t i = 0; i < G.size(); ++i) {
    std::vector<Tracked> others;
    others.reserve(G.size() - 1);
    for (std::size_t j = 0; j < G.size(); ++j)
      if (j != i) others.push_back(G[j]);
    G[i] = normal_form(std::move(G[i]), others, budget);
    make_monic(G[i]);
  }

  GroebnerBasis out;
  out.generators = generators;
  for (auto& t : G) {
    // construction invariant: the recorded row must reproduce the element
    if (!(row_combination(t.row, generators, nvars) == t.poly))
      throw std::logic_error("groebner: transformation row fails to reproduce basis element");
    out.basis.push_back(std::move(t.poly));
    out.transform.push_back(std::move(t.row));
  }
  return out;
}

std::optional<std::vector<Poly>> ideal_membership(const Poly& p, const std::vector<Poly>& generators,
                                                  const GroebnerOptions& opts) {
  if (generators.empty()) throw std::invalid_argument("ideal_membership: empty generator sequence");
  const std::size_t nvars = generators[0].nvars();
  if (p.is_zero()) return std::vector<Poly>(generators.size(), Poly(nvars));

  GroebnerBasis gb = groebner(generators, opts);
  Budget budget{opts.step_budget};

  // divide p by the basis, accumulating cofactors over basis elements
  std::vector<Poly> q(gb.basis.size(), Poly(nvars));
  Poly work = p;
  while (!work.is_zero()) {
    bool reduced = false;
    const Exponents& lm = work.leading_monomial();
    for (std::size_t k = 0; k < gb.basis.size(); ++k) {
      if (gb.basis[k].is_zero()) continue;
      if (!divides(gb.basis[k].leading_monomial(), lm)) continue;
      budget.spend("membership division");
      Exponents mono = quotient(lm, gb.basis[k].leading_monomial());
      Rational c = work.leading_coeff() / gb.basis[k].leading_coeff();
      work -= gb.basis[k].times_monomial(mono, c);
      Poly t(nvars);
      t.add_term(mono, c);
      q[k] += t;
      reduced = true;
      break;
    }
    if (!reduced) return std::nullopt;  // nonzero remainder: not a member
  }

  // map cofactors over the basis back to cofactors over the generators
  std::vector<Poly> cof(generators.size(), Poly(nvars));
  for (std::size_t k = 0; k < gb.basis.size(); ++k)
    for (std::size_t i = 0; i < generators.size(); ++i) cof[i] += q[k] * gb.transform[k][i];

  // contract: the exact identity is re-verified by expansion before returning
  Poly check(nvars);
  for (std::size_t i = 0; i < generators.size(); ++i) check += cof[i] * generators[i];
  if (!(check == p)) throw std::logic_error("ideal_membership: cofactor identity failed verification");
  return cof;
}

Poly reduce_by_basis(const Poly& p, const std::vector<Poly>& basis, const GroebnerOptions& opts) {
  Budget budget{opts.step_budget};
  Poly rem(p.nvars());
  Poly work = p;
  while (!work.is_zero()) {
    bool reduced = false;
    const Exponents& lm = work.leading_monomial();
    for (const auto& b : basis) {
      if (b.is_zero()) continue;
      if (!divides(b.leading_monomial(), lm)) continue;
      budget.spend("reduce");
      work -= b.times_monomial(quotient(lm, b.leading_monomial()), work.leading_coeff() / b.leading_coeff());
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.add_term(lm, work.leading_coeff());
      Poly lt(work.nvars());
      lt.add_term(lm, work.leading_coeff());
      work -= lt;
    }
  }
  return rem;
}

}  // namespace odeinv
