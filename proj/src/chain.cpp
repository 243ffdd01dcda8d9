#include "odeinv/chain.hpp"

#include <algorithm>

namespace odeinv {

RingContext NoetherianChain::ring() const {
  RingContext ctx;
  for (const auto& v : base_vars) ctx.indets.push_back(mk_var(v));
  for (const auto& e : elements) ctx.indets.push_back(e);
  return ctx;
}

std::size_t NoetherianChain::element_index(const Term& t) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (term_eq(elements[i], t)) return i;
  throw std::out_of_range("term is not a chain element: " + term_str(t));
}

namespace {

bool contains_element(const std::vector<Term>& elems, const Term& t) {
  for (const auto& e : elems)
    if (term_eq(e, t)) return true;
  return false;
}

// Collect application subterms bottom-up; for each application of h, the
// whole derivative-closure group of h over the same arguments is inserted
// (sin(u) drags in cos(u) and vice versa).
void collect_elements(const Term& t, const SymbolRegistry& reg, std::vector<Term>& out) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Const:
      return;
    case TermKind::Add:
    case TermKind::Mul:
      for (const auto& a : t->args) collect_elements(a, reg, out);
      return;
    case TermKind::App: {
      std::vector<Term> nargs;
      nargs.reserve(t->args.size());
      for (const auto& a : t->args) {
        collect_elements(a, reg, out);
        nargs.push_back(normalize(a, reg));
      }
      for (const auto& mate : reg.chain_group(t->name)) {
        Term elem = mk_app(mate, nargs);
        if (!contains_element(out, elem)) out.push_back(elem);
      }
      return;
    }
  }
}

// Close the element list under derivative templates: any application showing
// up in a partial derivative of an element must itself be an element.
void close_under_derivatives(std::vector<Term>& elems, const std::vector<std::string>& base_vars,
                             const SymbolRegistry& reg) {
  for (std::size_t j = 0; j < elems.size(); ++j) {
    for (const auto& x : base_vars) {
      Term d = partial_derivative(elems[j], x, reg);
      for (const auto& app : collect_apps(d)) {
        Term norm = normalize(app, reg);
        if (!contains_element(elems, norm)) {
          // pull in the whole group so the new element is closed as well
          collect_elements(norm, reg, elems);
          if (!contains_element(elems, norm)) elems.push_back(norm);
        }
      }
    }
  }
}

NoetherianChain build_chain(std::vector<Term> elems, std::set<std::string> vars,
                            const SymbolRegistry& reg) {
  for (const auto& e : elems)
    for (const auto& v : free_vars(e)) vars.insert(v);

  NoetherianChain chain;
  chain.base_vars.assign(vars.begin(), vars.end());
  close_under_derivatives(elems, chain.base_vars, reg);
  chain.elements = std::move(elems);

  RingContext ctx = chain.ring();
  chain.table.resize(chain.elements.size());
  for (std::size_t j = 0; j < chain.elements.size(); ++j) {
    chain.table[j].reserve(chain.base_vars.size());
    for (const auto& x : chain.base_vars) {
      Term d = partial_derivative(chain.elements[j], x, reg);
      Poly entry = poly_from_term(d, ctx, reg);  // throws if the chain is not closed
      // re-verify the entry substitutes back to the symbolic derivative
      if (!normal_eq(entry.to_term(ctx), d, reg))
        throw std::logic_error("chain derivative table entry failed verification");
      chain.table[j].push_back(std::move(entry));
    }
  }
  return chain;
}

}  // namespace

ChainRep chain_for_term(const Term& t, const SymbolRegistry& reg,
                        const std::set<std::string>& extra_base_vars) {
  NoetherianChain chain = chain_for_terms({t}, reg, extra_base_vars);
  Poly gen = poly_from_term(normalize(t, reg), chain.ring(), reg);
  return ChainRep{std::move(chain), std::move(gen)};
}

NoetherianChain chain_for_terms(const std::vector<Term>& terms, const SymbolRegistry& reg,
                                const std::set<std::string>& extra_base_vars) {
  std::vector<Term> elems;
  std::set<std::string> vars = extra_base_vars;
  for (const auto& t : terms) {
    collect_elements(t, reg, elems);
    for (const auto& v : free_vars(t)) vars.insert(v);
  }
  return build_chain(std::move(elems), std::move(vars), reg);
}

NoetherianChain chain_union(const NoetherianChain& a, const NoetherianChain& b,
                            const SymbolRegistry& reg) {
  std::vector<Term> elems = a.elements;
  for (const auto& e : b.elements)
    if (!contains_element(elems, e)) elems.push_back(e);
  std::set<std::string> vars(a.base_vars.begin(), a.base_vars.end());
  vars.insert(b.base_vars.begin(), b.base_vars.end());
  return build_chain(std::move(elems), std::move(vars), reg);
}

const Poly& derivative_table_entry(const NoetherianChain& chain, std::size_t j, std::size_t i) {
  if (j >= chain.elements.size()) throw std::out_of_range("chain element index out of range");
  if (i >= chain.base_vars.size()) throw std::out_of_range("base variable index out of range");
  return chain.table[j][i];
}

}  // namespace odeinv
