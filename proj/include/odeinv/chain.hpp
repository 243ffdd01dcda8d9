#pragma once

#include "odeinv/poly.hpp"
#include "odeinv/term.hpp"

#include <set>
#include <string>
#include <vector>

namespace odeinv {

// A Noetherian chain: application subterms h_1..h_r together with the closed
// partial-derivative table. Entry (j, i) is the polynomial, over base
// variables plus chain indeterminates, representing d h_j / d x_i.
//
// Elements are kept in a deterministic order with every structural
// sub-application preceding the applications built from it.
struct NoetherianChain {
  std::vector<std::string> base_vars;  // sorted
  std::vector<Term> elements;          // normalized App terms
  std::vector<std::vector<Poly>> table;

  bool empty() const { return elements.empty(); }

  // base variables first, chain elements after
  RingContext ring() const;

  std::size_t element_index(const Term& t) const;
};

// An extended term as a polynomial over base variables plus chain elements.
struct ChainRep {
  NoetherianChain chain;
  Poly generator;
};

// Chain containing exactly the application subterms needed for t (union of
// argument chains plus the composed applications, closed under the
// registered derivative templates). extra_base_vars join the term's own free
// variables as base variables.
ChainRep chain_for_term(const Term& t, const SymbolRegistry& reg = SymbolRegistry::builtin(),
                        const std::set<std::string>& extra_base_vars = {});

// Chain for a set of terms over shared base variables.
NoetherianChain chain_for_terms(const std::vector<Term>& terms,
                                const SymbolRegistry& reg = SymbolRegistry::builtin(),
                                const std::set<std::string>& extra_base_vars = {});

// Deduplicated ordered union; both inputs embed into the result.
NoetherianChain chain_union(const NoetherianChain& a, const NoetherianChain& b,
                            const SymbolRegistry& reg = SymbolRegistry::builtin());

// d elements[j] / d base_vars[i], exact.
const Poly& derivative_table_entry(const NoetherianChain& chain, std::size_t j, std::size_t i);

}  // namespace odeinv
