#pragma once

// Steenrod squares on GF(2) cohomology: the Wu formula on Stiefel-Whitney
// generators, the Cartan-rule extension to polynomials, and the Wu sums for
// bundles whose classes live on a sparse degree pattern.

#include <functional>
#include <optional>

#include "swcalc/presentations.hpp"

namespace swcalc {

class NonHomogeneousError : public Error {
 public:
  using Error::Error;
};

class UnresolvedClassError : public Error {
 public:
  UnresolvedClassError(const std::string& msg, int degree)
      : Error(msg), missingDegree(degree) {}
  int missingDegree;
};

// Nonzero degrees of the spin representation classes: 2^h and 2^h - 2^i for
// r <= i <= h.
struct VanishingPattern {
  int h = 0;
  int r = 0;
  std::vector<int> degrees;  // ascending, computed from (h, r)

  static VanishingPattern forRank(int n);
  bool contains(int d) const;
  int top() const { return 1 << h; }
  int lowestPositive() const;
};

// Wu formula for a single generator of BSO(n): Sq^j w_i with w_0 = 1,
// w_1 = 0 and w_m = 0 above the rank; 0 <= j <= i required.
Poly wuSqOnBsoGenerator(const RingPtr& bso, int n, int j, int i);

// Looks up w_d of a bundle class table; null when unresolved.
using ClassLookup = std::function<const Poly*(int degree)>;

class SteenrodContext {
 public:
  // `uTotalClass` supplies the total class of the bundle defining u (the u
  // generator itself sits in top degree); may be empty while no element
  // containing u is ever squared.
  SteenrodContext(PresentedRingPtr ring, std::function<Poly()> uTotalClass = {});

  const PresentedRingPtr& ring() const { return ring_; }

  // Sq^j of homogeneous p (normal form in, normal form out). Zero above the
  // degree, the Frobenius square at the degree.
  Poly sq(int j, const Poly& p) const;

  // Total square Sq(p) = sum_j Sq^j(p); a ring homomorphism.
  Poly totalSq(const Poly& p) const;
  Poly totalSqTruncated(const Poly& p, int cap) const;

  // Wu formula applied to the named generator degree, projected into the ring.
  Poly sqOnGenerator(int j, int genDegree) const;

  // Sq^j u derived from the bundle table (never axiomatized).
  Poly sqOnU(int j) const;

 private:
  const Poly& genTotalSq(int ambientIndex) const;
  PresentedRingPtr ring_;
  RingPtr ambient_;
  std::function<Poly()> uTotalClass_;
  mutable std::vector<std::optional<Poly>> genTotalSq_;
};

// The Wu sum for a bundle with the given vanishing pattern:
//   Sq^j w_D = sum_k binom(D-k-1, j-k) w_{D+j-k} w_k
// with classes read from `lookup` at pattern degrees and zero elsewhere.
// Throws UnresolvedClassError when a required pattern degree is unknown.
Poly expectedSqOfClass(const VanishingPattern& pattern, const ClassLookup& lookup,
                       const PresentedRingPtr& ring, int D, int j);

// True when the Wu sum for Sq^j w_D collapses to the single term w_{D+j}
// (coefficient one, no other surviving pattern pair). Purely combinatorial.
bool wuSumIsolatesTarget(const VanishingPattern& pattern, int D, int j);

}  // namespace swcalc
