#include "odeinv/progress.hpp"

namespace odeinv {

namespace {

Formula eq_prefix(const RankCertificate& cert, unsigned upto) {
  std::vector<Formula> eqs;
  for (unsigned j = 0; j < upto; ++j) eqs.push_back(mk_atom(cert.lies[j], Rel::Eq));
  return mk_and(std::move(eqs));
}

}  // namespace

Formula progress_gt(const Term& e, CertCache& cache, Direction dir) {
  RankCertificate cert = cache.get(e, dir);
  const unsigned n = cert.rank;
  std::vector<Formula> conjuncts;
  conjuncts.push_back(mk_atom(cert.lies[0], Rel::Geq));
  for (unsigned i = 1; i + 1 < n; ++i)
    conjuncts.push_back(mk_implies(eq_prefix(cert, i), mk_atom(cert.lies[i], Rel::Geq)));
  conjuncts.push_back(mk_implies(eq_prefix(cert, n - 1), mk_atom(cert.lies[n - 1], Rel::Gt)));
  return mk_and(std::move(conjuncts));
}

Formula progress_geq(const Term& e, CertCache& cache, Direction dir) {
  RankCertificate cert = cache.get(e, dir);
  return mk_or({progress_gt(e, cache, dir), diff_radical_formula(cert)});
}

Formula progress_semianalytic(const DNF& p, CertCache& cache, Direction dir) {
  std::vector<Formula> disjuncts;
  for (const auto& d : p.disjuncts) {
    std::vector<Formula> conjuncts;
    for (const auto& e : d.nonstrict) conjuncts.push_back(progress_geq(e, cache, dir));
    for (const auto& e : d.strict) conjuncts.push_back(progress_gt(e, cache, dir));
    disjuncts.push_back(mk_and(std::move(conjuncts)));
  }
  return mk_or(std::move(disjuncts));
}

}  // namespace odeinv
