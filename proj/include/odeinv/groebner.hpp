#pragma once

#include "odeinv/poly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace odeinv {

struct GroebnerOptions {
  // cap on elementary reduction steps; exceeding it raises BudgetExceeded
  std::uint64_t step_budget = 1'000'000;
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Reduced Groebner basis under degrevlex with full transformation rows:
// basis[j] == sum_i transform[j][i] * generators[i], re-verified by expansion
// on construction.
struct GroebnerBasis {
  std::vector<Poly> generators;
  std::vector<Poly> basis;
  std::vector<std::vector<Poly>> transform;
};

GroebnerBasis groebner(const std::vector<Poly>& generators, const GroebnerOptions& opts = {});

// If p is in the ideal of the generators, returns cofactors q with
// p == sum_i q[i] * generators[i], verified exactly before returning.
std::optional<std::vector<Poly>> ideal_membership(const Poly& p,
                                                  const std::vector<Poly>& generators,
                                                  const GroebnerOptions& opts = {});

// Remainder of p under multivariate division by the basis.
Poly reduce_by_basis(const Poly& p, const std::vector<Poly>& basis, const GroebnerOptions& opts = {});

}  // namespace odeinv
