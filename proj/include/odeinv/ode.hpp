#pragma once

#include "odeinv/formula.hpp"
#include "odeinv/term.hpp"

#include <string>
#include <vector>

namespace odeinv {

// Autonomous ODE system x' = f(x) & Q. Variables mentioned by right-hand
// sides or terms under analysis that are not state variables are symbolic
// parameters, held constant.
struct ODESystem {
  std::vector<std::string> vars;
  std::vector<Term> rhs;
  Formula domain = f_true();

  ODESystem() = default;
  ODESystem(std::vector<std::string> v, std::vector<Term> r, Formula q = f_true());

  const Term* rhs_of(const std::string& var) const;
  bool is_state_var(const std::string& var) const;

  // same system with every right-hand side negated (backward flow)
  ODESystem negated(const SymbolRegistry& reg = SymbolRegistry::builtin()) const;

  // stable identity string used for cache keys and reports
  std::string key() const;
};

}  // namespace odeinv
