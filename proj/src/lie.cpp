#include "odeinv/lie.hpp"

#include <sstream>

namespace odeinv {

ODESystem::ODESystem(std::vector<std::string> v, std::vector<Term> r, Formula q)
    : vars(std::move(v)), rhs(std::move(r)), domain(std::move(q)) {
  if (vars.size() != rhs.size())
    throw std::invalid_argument("ODESystem: one right-hand side per state variable");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw std::invalid_argument("ODESystem: duplicate state variable " + vars[i]);
}

const Term* ODESystem::rhs_of(const std::string& var) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == var) return &rhs[i];
  return nullptr;
}

bool ODESystem::is_state_var(const std::string& var) const { return rhs_of(var) != nullptr; }

ODESystem ODESystem::negated(const SymbolRegistry& reg) const {
  ODESystem out = *this;
  for (auto& f : out.rhs) f = normalize(mk_neg(f), reg);
  return out;
}

std::string ODESystem::key() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < vars.size(); ++i) os << vars[i] << "'=" << term_str(rhs[i]) << ";";
  return os.str();
}

Term lie_derivative(const Term& e, const ODESystem& ode, const SymbolRegistry& reg) {
  std::vector<Term> summands;
  summands.reserve(ode.vars.size());
  for (std::size_t i = 0; i < ode.vars.size(); ++i) {
    Term d = partial_derivative(e, ode.vars[i], reg);
    if (is_zero_const(d)) continue;
    summands.push_back(mk_mul(d, ode.rhs[i]));
  }
  return normalize(mk_add(std::move(summands)), reg);
}

Term higher_lie(const Term& e, const ODESystem& ode, unsigned i, const SymbolRegistry& reg) {
  Term acc = normalize(e, reg);
  for (unsigned k = 0; k < i; ++k) acc = lie_derivative(acc, ode, reg);
  return acc;
}

NoetherianChain joint_chain(const std::vector<Term>& subjects, const ODESystem& ode,
                            const SymbolRegistry& reg) {
  std::vector<Term> all = subjects;
  all.insert(all.end(), ode.rhs.begin(), ode.rhs.end());
  std::set<std::string> vars(ode.vars.begin(), ode.vars.end());
  return chain_for_terms(all, reg, vars);
}

RankCertificate rank_certificate(const Term& e, const ODESystem& ode, const LieOptions& opts,
                                 const SymbolRegistry& reg) {
  if (opts.max_rank < 1) throw std::invalid_argument("rank_certificate: max_rank must be >= 1");

  NoetherianChain chain = joint_chain({e}, ode, reg);
  RingContext ring = chain.ring();

  RankCertificate cert;
  cert.subject = normalize(e, reg);
  cert.lies.push_back(cert.subject);
  std::vector<Poly> lie_polys{poly_from_term(cert.subject, ring, reg)};

  for (unsigned n = 1; n <= opts.max_rank; ++n) {
    Term next = lie_derivative(cert.lies.back(), ode, reg);
    cert.lies.push_back(next);
    // Lie derivatives stay inside the chain ring by closure under partial
    // derivatives; poly_from_term throwing here would mean a chain bug.
    lie_polys.push_back(poly_from_term(next, ring, reg));

    std::vector<Poly> lower(lie_polys.begin(), lie_polys.end() - 1);
    auto cof = ideal_membership(lie_polys.back(), lower, opts.gb);
    if (!cof) continue;

    cert.rank = n;
    cert.cofactors.clear();
    for (const auto& q : *cof) cert.cofactors.push_back(normalize(q.to_term(ring), reg));

    // re-verify the differential radical identity by exact term expansion
    std::vector<Term> sum;
    for (unsigned i = 0; i < n; ++i) sum.push_back(mk_mul(cert.cofactors[i], cert.lies[i]));
    if (!normal_eq(cert.lies[n], mk_add(std::move(sum)), reg))
      throw std::logic_error("rank certificate identity failed verification");
    return cert;
  }

  throw RankExceeded("no differential radical identity up to rank " + std::to_string(opts.max_rank) +
                         " for " + term_str(cert.subject),
                     opts.max_rank);
}

Formula diff_radical_formula(const RankCertificate& cert, const SymbolRegistry& reg) {
  std::vector<Formula> eqs;
  for (unsigned i = 0; i < cert.rank; ++i) eqs.push_back(mk_atom(cert.lies[i], Rel::Eq, reg));
  return mk_and(std::move(eqs));
}

Formula diff_radical_formula(const Term& e, const ODESystem& ode, const LieOptions& opts,
                             const SymbolRegistry& reg) {
  return diff_radical_formula(rank_certificate(e, ode, opts, reg), reg);
}

CertCache::CertCache(ODESystem ode, LieOptions opts, const SymbolRegistry& reg)
    : forward_(std::move(ode)), backward_(forward_.negated(reg)), opts_(opts), reg_(reg) {}

const ODESystem& CertCache::ode(Direction dir) const {
  return dir == Direction::Forward ? forward_ : backward_;
}

RankCertificate CertCache::get(const Term& e, Direction dir) {
  Term norm = normalize(e, reg_);
  std::string key = (dir == Direction::Forward ? "F " : "B ") + term_str(norm);
  {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  Term neg = normalize(mk_neg(norm), reg_);
  std::string neg_key = (dir == Direction::Forward ? "F " : "B ") + term_str(neg);
  {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(neg_key);
    if (it != memo_.end()) {
      // linearity: L_i(-e) = -L_i(e) with identical cofactors
      RankCertificate derived = it->second;
      derived.subject = norm;
      for (auto& l : derived.lies) l = normalize(mk_neg(l), reg_);
      lock.unlock();
      std::unique_lock wlock(mutex_);
      return memo_.emplace(key, std::move(derived)).first->second;
    }
  }

  RankCertificate cert = rank_certificate(norm, ode(dir), opts_, reg_);
  std::unique_lock wlock(mutex_);
  return memo_.emplace(key, std::move(cert)).first->second;
}

}  // namespace odeinv
