#include "swcalc/steenrod.hpp"

#include <algorithm>

#include "swcalc/binom.hpp"

namespace swcalc {

VanishingPattern VanishingPattern::forRank(int n) {
  if (n < 3) throw Error("vanishing pattern needs rank >= 3");
  VanishingPattern p;
  const int m = n % 8;
  if (m == 0 || m == 1 || m == 7)
    p.r = 0;
  else if (m == 2 || m == 6)
    p.r = 1;
  else
    p.r = 2;
  // h_n as in spinH; duplicated arithmetic kept local to avoid a cycle.
  switch (m) {
    case 0: p.h = (n - 2) / 2; break;
    case 1:
    case 7: p.h = (n - 1) / 2; break;
    case 2:
    case 4:
    case 6: p.h = n / 2; break;
    default: p.h = (n + 1) / 2; break;  // 3, 5 mod 8
  }
  for (int i = p.r; i <= p.h; ++i) p.degrees.push_back((1 << p.h) - (1 << i));
  p.degrees.push_back(1 << p.h);
  std::sort(p.degrees.begin(), p.degrees.end());
  return p;
}

bool VanishingPattern::contains(int d) const {
  return std::binary_search(degrees.begin(), degrees.end(), d);
}

int VanishingPattern::lowestPositive() const {
  for (int d : degrees)
    if (d > 0) return d;
  throw Error("empty vanishing pattern");
}

namespace {

int wuCoefficient(int i, int j, int k) {
  // binom(i-k-1, j-k) mod 2; the k = i = j corner is binom(-1, 0) = 1.
  if (j - k == 0) return 1;
  if (i - k - 1 < 0) return 0;
  return binomMod2(static_cast<uint64_t>(i - k - 1), static_cast<uint64_t>(j - k));
}

}  // namespace

Poly wuSqOnBsoGenerator(const RingPtr& bso, int n, int j, int i) {
  if (j < 0 || j > i)
    throw Error("wu formula needs 0 <= j <= i (got j=" + std::to_string(j) +
                ", i=" + std::to_string(i) + ")");
  std::vector<Mono> monos;
  for (int k = 0; k <= j; ++k) {
    if (!wuCoefficient(i, j, k)) continue;
    const int a = i + j - k;  // first factor degree
    if (a > n || k > n) continue;
    if (a == 1 || k == 1) continue;  // w_1 = 0 in BSO
    Mono m;
    if (a >= 2) {
      const int idx = bso->genIndex("w_" + std::to_string(a));
      if (idx < 0) throw Error("bso ring lacks w_" + std::to_string(a));
      m.setExp(idx, m.exp(idx) + 1);
    }
    if (k >= 2) {
      const int idx = bso->genIndex("w_" + std::to_string(k));
      m.setExp(idx, m.exp(idx) + 1);
    }
    monos.push_back(m);
  }
  return Poly::fromMonos(bso, std::move(monos));
}

SteenrodContext::SteenrodContext(PresentedRingPtr ring, std::function<Poly()> uTotalClass)
    : ring_(std::move(ring)), uTotalClass_(std::move(uTotalClass)) {
  ambient_ = ring_->ambient ? ring_->ambient : ring_->vars;
  genTotalSq_.resize(ring_->vars->numGens());
}

const Poly& SteenrodContext::genTotalSq(int varIndex) const {
  // Total square of the var-ring generator, already pushed into the quotient;
  // valid because the defining ideal is closed under the squares.
  auto& slot = genTotalSq_[varIndex];
  if (!slot) {
    const int i = ring_->vars->gen(varIndex).degree;
    Poly total = Poly::zero(ambient_);
    for (int j = 0; j <= i; ++j)
      total += wuSqOnBsoGenerator(ambient_, ring_->ambientDim, j, i);
    slot = ring_->ambient ? ring_->projectFromAmbient(total) : std::move(total);
  }
  return *slot;
}

Poly SteenrodContext::totalSqTruncated(const Poly& p, int cap) const {
  const RingPtr& vars = ring_->vars;
  const int uIdx = ring_->uIndex;
  const int uDeg = uIdx >= 0 ? vars->gen(uIdx).degree : 0;

  // Split by u exponent; Sq is additive and multiplicative, so
  // Sq(P_e u^e) = Sq(P_e) Sq(u)^e.
  std::vector<std::pair<int, std::vector<Mono>>> groups;
  for (const Mono& t : p.terms()) {
    const int e = uIdx >= 0 ? t.exp(uIdx) : 0;
    Mono yPart = t;
    if (uIdx >= 0) yPart.setExp(uIdx, 0);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [e](const auto& g) { return g.first == e; });
    if (it == groups.end()) {
      groups.push_back({e, {yPart}});
    } else {
      it->second.push_back(yPart);
    }
  }

  std::vector<Poly> images(vars->numGens(), Poly::zero(vars));
  for (int i = 0; i < vars->numGens(); ++i)
    if (i != uIdx) images[i] = genTotalSq(i);

  Poly result = Poly::zero(vars);
  for (auto& [e, monos] : groups) {
    Poly part = Poly::fromMonos(vars, std::move(monos));
    const int partCap = cap < 0 ? -1 : cap - e * uDeg;
    if (cap >= 0 && partCap < 0) continue;
    Poly inRing = ring_->normalForm(substitute(part, vars, images, partCap));
    if (e > 0) {
      if (!uTotalClass_)
        throw UnresolvedClassError("Sq on u requires a resolved bundle table", uDeg);
      // Sq(u) = u * w(bundle), so Sq(u^e) = u^e * w(bundle)^e.
      Poly w = uTotalClass_();
      const int wCap = cap < 0 ? -1 : cap - e * uDeg;
      Poly wPow = w.powTruncated(e, wCap);
      Poly uPow = Poly::generator(vars, uIdx, e);
      Poly sqU = uPow * wPow;
      inRing = cap < 0 ? inRing * sqU : inRing.mulTruncated(sqU, cap);
      inRing = ring_->normalForm(inRing);
    }
    result += inRing;
  }
  return result;
}

Poly SteenrodContext::totalSq(const Poly& p) const { return totalSqTruncated(p, -1); }

Poly SteenrodContext::sq(int j, const Poly& p) const {
  if (j < 0) throw Error("negative Steenrod index");
  int d = 0;
  if (!p.isHomogeneous(&d))
    throw NonHomogeneousError("Sq^j needs a homogeneous argument");
  if (p.isZero()) return p;
  if (j > d) return Poly::zero(ring_->vars);
  if (j == 0) return p;
  return totalSqTruncated(p, d + j).gradedComponent(d + j);
}

Poly SteenrodContext::sqOnGenerator(int j, int genDegree) const {
  Poly ambient = wuSqOnBsoGenerator(ambient_, ring_->ambientDim, j, genDegree);
  return ring_->projectFromAmbient(ambient);
}

Poly SteenrodContext::sqOnU(int j) const {
  if (ring_->uIndex < 0) throw Error("ring has no u generator");
  if (!uTotalClass_)
    throw UnresolvedClassError("Sq on u requires a resolved bundle table",
                               ring_->vars->gen(ring_->uIndex).degree);
  const int uDeg = ring_->vars->gen(ring_->uIndex).degree;
  if (j > uDeg) return Poly::zero(ring_->vars);
  // Only the k = j term of the Wu sum survives above the top class:
  // Sq^j u = u * w_j(bundle).
  Poly wj = uTotalClass_().gradedComponent(j);
  return ring_->normalForm(Poly::generator(ring_->vars, ring_->uIndex) * wj);
}

Poly expectedSqOfClass(const VanishingPattern& pattern, const ClassLookup& lookup,
                       const PresentedRingPtr& ring, int D, int j) {
  if (!pattern.contains(D))
    throw Error("degree " + std::to_string(D) + " is not a pattern degree");
  Poly sum = Poly::zero(ring->vars);
  for (int k = 0; k <= j; ++k) {
    if (!wuCoefficient(D, j, k)) continue;
    const int a = D + j - k;
    if (!pattern.contains(a) || !pattern.contains(k)) continue;
    const Poly* first = lookup(a);
    const Poly* second = lookup(k);
    if (first == nullptr)
      throw UnresolvedClassError("Wu sum references unresolved class of degree " +
                                     std::to_string(a),
                                 a);
    if (second == nullptr)
      throw UnresolvedClassError("Wu sum references unresolved class of degree " +
                                     std::to_string(k),
                                 k);
    sum += ring->normalForm(*first * *second);
  }
  return sum;
}

bool wuSumIsolatesTarget(const VanishingPattern& pattern, int D, int j) {
  if (wuCoefficient(D, j, 0) != 1) return false;
  if (!pattern.contains(D + j)) return false;
  for (int k = 1; k <= j; ++k) {
    if (!wuCoefficient(D, j, k)) continue;
    if (pattern.contains(D + j - k) && pattern.contains(k)) return false;
  }
  return true;
}

}  // namespace swcalc
