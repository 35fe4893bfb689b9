#pragma once

// Symmetric-function machinery: products over index subsets, expansion of
// symmetric polynomials over the elementary symmetric basis by the slice
// induction (peel off the top variable, divide by t_1...t_n, recurse), the
// closed-form induction for the second exterior power, and mod-2 Chern
// classes of exterior powers of SU(n).

#include "swcalc/gf2poly.hpp"

namespace swcalc {

class NotSymmetricError : public Error {
 public:
  using Error::Error;
};

struct SymfuncOptions {
  size_t budgetTerms = size_t{1} << 26;
  bool strictSymmetry = false;  // check all adjacent transpositions
  unsigned sampleChecks = 5;    // sampled transpositions otherwise
};

// t_1..t_n, all of degree one.
RingPtr makeTRing(int n);
// w_1..w_n with deg w_i = i (the elementary symmetric basis).
RingPtr makeSymRing(int n);

// Product over all i-element subsets S of {1..n} of (1 + sum_{j in S} t_j),
// fully expanded; symmetric by construction.
Poly bhProduct(int n, int i, const SymfuncOptions& opts = {});

// Q with Q(e_1,...,e_n) = p for symmetric p in a t-ring; the result lives in
// `sym` (needs exactly as many generators). Throws NotSymmetricError when the
// input fails the symmetry check or the peel leaves a residue.
Poly toElementary(const Poly& p, const RingPtr& sym, const SymfuncOptions& opts = {});

// Total class of the second exterior power over w_1..w_n, computed by the
// level-by-level induction without ever expanding the subset product.
Poly lambda2Total(int n, const SymfuncOptions& opts = {});

// Mod-2 total Chern class of the i-th exterior power of SU(n) in the given
// BSU ring (c_1 is set to zero; degrees double).
Poly chernExteriorSu(int n, int i, const RingPtr& bsu, const SymfuncOptions& opts = {});

// Image of the total class of the second exterior power under the restriction
// to the diagonal 2-torus, as a symmetric t-polynomial.
Poly swExteriorRestriction(int n, const SymfuncOptions& opts = {});

// Substitutes the elementary symmetric polynomials of `tring` into q (a
// polynomial over w_1..w_n); inverse direction of toElementary.
Poly evalAtElementary(const Poly& q, const RingPtr& tring);

// Applies the transposition t_j <-> t_{j+1}.
Poly swapAdjacentVars(const Poly& p, int j);

}  // namespace swcalc
