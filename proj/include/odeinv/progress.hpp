#pragma once

#include "odeinv/formula.hpp"
#include "odeinv/lie.hpp"

namespace odeinv {

// First-significant-Lie-derivative progress formula for e > 0: with rank N,
//   L_0 >= 0
//   & (L_0 = 0 -> L_1 >= 0)                       (lines up to N-2 nonstrict)
//   & ...
//   & (L_0 = 0 & ... & L_{N-2} = 0 -> L_{N-1} > 0)
// Rank 1 degenerates to L_0 >= 0 & L_0 > 0.
Formula progress_gt(const Term& e, CertCache& cache, Direction dir = Direction::Forward);

// progress into e >= 0: progress_gt(e) | diff_radical_formula(e)
Formula progress_geq(const Term& e, CertCache& cache, Direction dir = Direction::Forward);

// Homomorphic lift over a DNF: disjunction of conjunctions with nonstrict
// atoms replaced by progress_geq and strict atoms by progress_gt. The
// backward direction takes Lie derivatives along the negated ODE.
Formula progress_semianalytic(const DNF& p, CertCache& cache, Direction dir = Direction::Forward);

}  // namespace odeinv
