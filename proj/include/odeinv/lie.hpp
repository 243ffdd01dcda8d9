#pragma once

#include "odeinv/chain.hpp"
#include "odeinv/formula.hpp"
#include "odeinv/groebner.hpp"
#include "odeinv/ode.hpp"

#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace odeinv {

// Rank certificate for the differential radical identity
//   L_N = sum_{i<N} g_i L_i
// over the joint chain ring of the subject and the ODE right-hand sides.
struct RankCertificate {
  Term subject;
  unsigned rank = 0;               // N >= 1
  std::vector<Term> lies;          // L_0 .. L_N, normalized, L_0 = subject
  std::vector<Term> cofactors;     // g_0 .. g_{N-1}
};

struct RankExceeded : std::runtime_error {
  RankExceeded(const std::string& what, unsigned max_rank_in)
      : std::runtime_error(what), max_rank(max_rank_in) {}
  unsigned max_rank;
};

struct LieOptions {
  unsigned max_rank = 16;
  GroebnerOptions gb;
};

Term lie_derivative(const Term& e, const ODESystem& ode,
                    const SymbolRegistry& reg = SymbolRegistry::builtin());

Term higher_lie(const Term& e, const ODESystem& ode, unsigned i,
                const SymbolRegistry& reg = SymbolRegistry::builtin());

// Chain covering the subject and every right-hand side; rank search and the
// Darboux checks all work inside this ring.
NoetherianChain joint_chain(const std::vector<Term>& subjects, const ODESystem& ode,
                            const SymbolRegistry& reg = SymbolRegistry::builtin());

// Smallest N <= max_rank with L_N in the ideal of L_0..L_{N-1}; cofactors are
// mapped back to terms and the identity is re-verified by exact expansion.
RankCertificate rank_certificate(const Term& e, const ODESystem& ode, const LieOptions& opts = {},
                                 const SymbolRegistry& reg = SymbolRegistry::builtin());

// Conjunction L_0 = 0 & ... & L_{N-1} = 0.
Formula diff_radical_formula(const RankCertificate& cert,
                             const SymbolRegistry& reg = SymbolRegistry::builtin());
Formula diff_radical_formula(const Term& e, const ODESystem& ode, const LieOptions& opts = {},
                             const SymbolRegistry& reg = SymbolRegistry::builtin());

enum class Direction { Forward, Backward };

// Memoizing certificate store for one ODE (both flow directions). Reuses a
// certificate of e for -e through linearity of Lie derivatives. Concurrent
// readers are fine; writers are serialized.
class CertCache {
 public:
  explicit CertCache(ODESystem ode, LieOptions opts = {},
                     const SymbolRegistry& reg = SymbolRegistry::builtin());

  const ODESystem& ode(Direction dir = Direction::Forward) const;
  RankCertificate get(const Term& e, Direction dir = Direction::Forward);

 private:
  ODESystem forward_;
  ODESystem backward_;
  LieOptions opts_;
  const SymbolRegistry& reg_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, RankCertificate> memo_;
};

}  // namespace odeinv
