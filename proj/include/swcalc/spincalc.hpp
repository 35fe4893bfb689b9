#pragma once

// The spin-representation pipeline: restriction identities and Whitney
// products, the indeterminate-coefficient solver driven by Steenrod-square
// constraints, total-class reconstruction from the lowest class, the full
// rank-3..15 dependency chain, and the 248-dimensional adjoint-restriction
// bundle with its indecomposability check.

#include <map>
#include <optional>

#include "swcalc/presentations.hpp"
#include "swcalc/steenrod.hpp"
#include "swcalc/symfunc.hpp"

namespace swcalc {

enum class Variant { Delta, Plus, Minus };

std::string variantName(Variant v);
Variant variantFromName(const std::string& name);

struct SpinClassTable {
  int n = 0;
  Variant variant = Variant::Delta;
  VanishingPattern pattern;
  PresentedRingPtr ring;
  std::map<int, Poly> classes;  // degree -> class, normal forms

  const Poly* find(int d) const;
  const Poly& at(int d) const;       // throws UnresolvedClassError
  Poly component(int d) const;       // zero outside the pattern
  Poly total() const;
  void validate() const;             // classes sit on pattern degrees, w_0 = 1
};

// A formal direct sum of spin bundles (or a trivial summand), as produced by
// the restriction identities.
struct RepSum {
  struct Summand {
    int n = 0;
    Variant variant = Variant::Delta;
    int multiplicity = 1;
  };
  std::vector<Summand> summands;
  int trivialDims = 0;  // contributes nothing to the total class
};

// Restriction of the rank-n spin bundle along Spin(n-1) -> Spin(n), with
// complexification doubling folded into the multiplicities.
RepSum restrictSpin(int n, Variant v);

struct SolveRecord {
  int n = 0;
  Variant variant = Variant::Delta;
  int degree = 0;
  std::vector<std::string> unknowns;      // kernel basis, canonical text
  std::vector<uint8_t> coefficients;      // solved values, same order
  std::vector<int> sqExponents;
  std::vector<size_t> rankAfterConstraint;  // cumulative rank per constraint
};

class SpinPipeline {
 public:
  struct Options {
    SymfuncOptions symfunc;
  };
  explicit SpinPipeline(Options opts = {});

  const PresentedRingPtr& bspin(int n);
  const PresentedRingPtr& bsu(int n);
  SteenrodContext& steenrod(int n);

  // Resolved class table for (Delta_n)_R / (Delta_n^±)_R; conjugate variants
  // of ranks 2, 6 mod 8 share one table.
  const SpinClassTable& spinTable(int n, Variant v);

  // Total class of the Whitney sum of a restriction.
  Poly whitneySum(const RepSum& sum);

  // w(f_{n-1}^* ...) of the rank-n bundle, expressed in bspin(n-1).
  Poly restrictedTotal(int n, Variant v);

  // Mod-2 Chern class of the i-th exterior power of SU(n); cached.
  const Poly& chernExterior(int n, int i);

  // Pullback of the rank-2n bundle to BSU(n): the product of the exterior
  // Chern classes of matching parity.
  Poly suPullbackTotal(int n2, Variant v);

  const RingHom& homF(int n);  // bspin(n+1) -> bspin(n)
  const RingHom& homR(int n);  // bspin(2n) -> bsu(n)

  // lambda^1 and lambda^2 classes pushed into bspin(n).
  Poly lambda1Total(int n);
  const Poly& lambda2Total(int n);

  // w(lambda^1 + lambda^2) of rank 15.
  const Poly& lambdaSumTotal();
  // Graded component of w(Delta_15 + lambda^1 + lambda^2).
  Poly adjointComponent(int d);

  // Induced classes of the 26-, 27- and 28-dimensional exceptional-group
  // representations restricted to Spin(9), Spin(10), Spin(12).
  Poly exceptionalRepTotal(int which);  // 4, 6 or 7

  const std::vector<SolveRecord>& solveLog() const { return solveLog_; }
  const SolveRecord* solveRecord(int n, Variant v) const;

  // Deletes every monomial that factors into two positive-degree classes.
  static Poly indecomposableComponent(const PresentedRingPtr& ring, const Poly& p, int d);

 private:
  const SpinClassTable& computeTable(int n, Variant v);
  void fillFromLowest(SpinClassTable& table);
  Poly solveClass(SpinClassTable& table, int degree,
                  std::span<const RingHom* const> homs, std::span<const Poly> targets,
                  std::span<const int> sqExponents);
  void checkGolden(const SpinClassTable& table);
  void checkRestrictionConsistency(const SpinClassTable& table);

  Options opts_;
  std::map<int, PresentedRingPtr> bspin_;
  std::map<int, PresentedRingPtr> bsu_;
  std::map<int, std::unique_ptr<SteenrodContext>> steenrod_;
  std::map<std::pair<int, int>, SpinClassTable> tables_;
  std::map<std::pair<int, int>, Poly> chern_;
  std::map<int, RingHom> homF_;
  std::map<int, RingHom> homR_;
  std::map<int, Poly> lambda2_;
  std::optional<Poly> lambdaSum_;
  std::vector<SolveRecord> solveLog_;
};

// Embedded canonical text of the published classes (same content as the
// test fixtures); nullptr when absent.
const char* goldenText(const std::string& key);

}  // namespace swcalc
