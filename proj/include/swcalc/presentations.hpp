#pragma once

// Ring presentations: the BSO/BSU ambient rings, Buchberger's algorithm over
// GF(2) under the graded order, the BSpin(n) quotient presentations, ring
// homomorphisms, degree bases, kernels and preimages.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "swcalc/gf2poly.hpp"

namespace swcalc {

class GoldenMismatchError : public Error {
 public:
  using Error::Error;
};

class IllDefinedHomError : public Error {
 public:
  using Error::Error;
};

class NoPreimageError : public Error {
 public:
  using Error::Error;
};

class UnderdeterminedError : public Error {
 public:
  using Error::Error;
};

// H^*(BSO(n)): free on w_2..w_n, deg w_i = i.
RingPtr makeBsoRing(int n);
// H^*(BSU(n)) mod 2: free on c_2..c_n, deg c_i = 2i.
RingPtr makeBsuRing(int n);

// Exponent h_n of the polynomial generator u_{2^h}.
int spinH(int n);

// Generators of the ideal J in BSO(n): w_2 and its iterated squares,
// h_n elements of degrees 2, 3, 5, ..., 2^{h-1}+1.
std::vector<Poly> jGenerators(int n);

// Reduced Groebner basis; homogeneous inputs required. Deterministic:
// S-pairs processed lowest degree first, ties by the order on the lcm.
std::vector<Poly> buchbergerReduced(std::vector<Poly> gens);

// Remainder of division by `basis` (need not be a Groebner basis); largest
// reducible term first, first dividing basis element wins.
Poly normalFormByBasis(const Poly& p, std::span<const Poly> basis);

struct PresentedRing;
using PresentedRingPtr = std::shared_ptr<const PresentedRing>;

struct PresentedRing {
  std::string name;
  RingPtr vars;                 // quotient generators
  std::vector<Poly> relations;  // reduced Groebner basis in `vars`
  RingPtr ambient;              // null when the ring is free over its vars
  std::vector<int> ambientOfVar;  // var index -> ambient index, -1 for u
  int uIndex = -1;                // var index of u_{2^h}, -1 when absent
  int ambientDim = 0;             // the rank n for BSO/BSpin rings

  bool isFree() const { return relations.empty(); }

  // Unique remainder modulo the relations; idempotent and GF(2)-linear.
  Poly normalForm(const Poly& p) const;

  // y_i -> w_i rename into the ambient ring; u must not occur.
  Poly liftToAmbient(const Poly& p) const;
  // w_i -> y_i or 0 (eliminated generators), then normal form.
  Poly projectFromAmbient(const Poly& p) const;

  Poly parse(const std::string& text) const { return parsePoly(vars, text); }
};

// H^*(BSpin(n)) as quotient-of-BSO tensor Z/2[u]; fails hard if the computed
// relations disagree with the stored canonical text for 10 <= n <= 15.
PresentedRingPtr makeBspinRing(int n);

// BSU(n) wrapped as a free presentation (target of the SU restriction maps).
PresentedRingPtr makeBsuPresented(int n);

struct RingHom {
  std::string name;
  PresentedRingPtr source;
  PresentedRingPtr target;
  std::vector<Poly> images;  // one per source generator

  Poly apply(const Poly& p) const;
  // Degree preservation plus relations mapping to zero.
  void checkWellDefined() const;
};

struct DegreeBasis {
  PresentedRingPtr ring;
  int degree = 0;
  std::vector<Mono> monos;  // descending in the ring order
};

// All relation-irreducible monomials of degree d (u powers included).
DegreeBasis degreeBasis(const PresentedRingPtr& ring, int d);

// GF(2) basis of the joint kernel in degree d, echelonized so each basis
// vector has a unique leading monomial.
std::vector<Poly> kernelInDegree(std::span<const RingHom> homs, int d);

struct PreimageResult {
  Poly particular;
  std::vector<Poly> kernel;  // kernel basis in the same degree
};

// One x with homs[i](x) = targets[i] for all i, plus the kernel basis.
PreimageResult preimageInDegree(std::span<const RingHom> homs,
                                std::span<const Poly> targets, int d);

inline PreimageResult preimageInDegree(const RingHom& hom, const Poly& target, int d) {
  return preimageInDegree(std::span<const RingHom>(&hom, 1),
                          std::span<const Poly>(&target, 1), d);
}

}  // namespace swcalc
