#include "swcalc/symfunc.hpp"

#include <algorithm>
#include <random>

#include "swcalc/binom.hpp"

namespace swcalc {

RingPtr makeTRing(int n) {
  if (n < 1) throw Error("t-ring needs n >= 1");
  std::vector<Ring::Generator> gens;
  for (int i = 1; i <= n; ++i) gens.push_back({"t_" + std::to_string(i), 1});
  return Ring::make("t" + std::to_string(n), std::move(gens));
}

RingPtr makeSymRing(int n) {
  if (n < 1) throw Error("sym ring needs n >= 1");
  std::vector<Ring::Generator> gens;
  for (int i = 1; i <= n; ++i) gens.push_back({"w_" + std::to_string(i), i});
  return Ring::make("sym" + std::to_string(n), std::move(gens));
}

Poly swapAdjacentVars(const Poly& p, int j) {
  const RingPtr& ring = p.ring();
  if (j < 0 || j + 1 >= ring->numGens()) throw Error("transposition out of range");
  std::vector<Mono> monos;
  monos.reserve(p.termCount());
  for (const Mono& t : p.terms()) {
    Mono m = t;
    const int a = m.exp(j), b = m.exp(j + 1);
    m.setExp(j, b);
    m.setExp(j + 1, a);
    monos.push_back(m);
  }
  return Poly::fromMonos(ring, std::move(monos));
}

namespace {

void checkBudget(const Poly& p, const SymfuncOptions& opts, const char* where) {
  if (p.termCount() > opts.budgetTerms)
    throw BudgetExceededError(std::string(where) + ": term budget exceeded (" +
                              std::to_string(p.termCount()) + " > " +
                              std::to_string(opts.budgetTerms) + ")");
}

void checkSymmetric(const Poly& p, const SymfuncOptions& opts) {
  const int n = p.ring()->numGens();
  if (n < 2) return;
  if (opts.strictSymmetry) {
    for (int j = 0; j + 1 < n; ++j)
      if (!(swapAdjacentVars(p, j) == p))
        throw NotSymmetricError("input is not symmetric under t_" + std::to_string(j + 1) +
                                " <-> t_" + std::to_string(j + 2));
    return;
  }
  std::mt19937_64 rng(0xC0FFEEu + static_cast<uint64_t>(n));
  for (unsigned k = 0; k < opts.sampleChecks; ++k) {
    const int j = static_cast<int>(rng() % (n - 1));
    if (!(swapAdjacentVars(p, j) == p))
      throw NotSymmetricError("input is not symmetric under t_" + std::to_string(j + 1) +
                              " <-> t_" + std::to_string(j + 2));
  }
}

// e_i(t_1..t_n) as polynomials of the t-ring, for i = 1..n.
std::vector<Poly> elementaryPolys(const RingPtr& tring) {
  const int n = tring->numGens();
  std::vector<Poly> es;
  for (int i = 1; i <= n; ++i) {
    std::vector<Mono> monos;
    std::vector<int> subset(i);
    auto rec = [&](auto&& self, int start, int left) -> void {
      if (left == 0) {
        Mono m;
        for (int k = 0; k < i; ++k) m.setExp(subset[k], 1);
        monos.push_back(m);
        return;
      }
      for (int v = start; v <= n - left; ++v) {
        subset[i - left] = v;
        self(self, v + 1, left - 1);
      }
    };
    rec(rec, 0, i);
    es.push_back(Poly::fromMonos(tring, std::move(monos)));
  }
  return es;
}

Poly dropVarAndReindex(const Poly& p, const RingPtr& smaller) {
  // forget the last generator (must have exponent zero everywhere)
  std::vector<Mono> monos;
  monos.reserve(p.termCount());
  const int last = p.ring()->numGens() - 1;
  for (const Mono& t : p.terms()) {
    if (t.exp(last) != 0) throw Error("dropVar: nonzero exponent on the dropped variable");
    monos.push_back(t);
  }
  return Poly::fromMonos(smaller, std::move(monos));
}

Poly widenRing(const Poly& p, const RingPtr& bigger) {
  std::vector<Mono> monos(p.terms().begin(), p.terms().end());
  return Poly::fromMonos(bigger, std::move(monos));
}

// The slice induction behind toElementary, without symmetry rechecks.
Poly toElementaryImpl(const Poly& p, const RingPtr& sym, const SymfuncOptions& opts) {
  const RingPtr& tring = p.ring();
  const int n = tring->numGens();
  if (p.isZero()) return Poly::zero(sym);
  if (n == 1) {
    // t_1^k -> w_1^k
    std::vector<Mono> monos(p.terms().begin(), p.terms().end());
    return Poly::fromMonos(sym, std::move(monos));
  }
  const RingPtr smallT = makeTRing(n - 1);
  const RingPtr smallSym = makeSymRing(n - 1);
  const std::vector<Poly> es = elementaryPolys(tring);

  Mono eN;  // t_1 * ... * t_n
  for (int i = 0; i < n; ++i) eN.setExp(i, 1);

  Poly residue = p;
  Poly result = Poly::zero(sym);
  for (int m = 0; !residue.isZero(); ++m) {
    if (m > 0) residue = exactDivide(residue, eN);
    // slice at t_n = 0
    std::vector<Mono> sliceMonos;
    for (const Mono& t : residue.terms())
      if (t.exp(n - 1) == 0) sliceMonos.push_back(t);
    Poly slice = dropVarAndReindex(Poly::fromMonos(tring, std::move(sliceMonos)), smallT);
    Poly q = toElementaryImpl(slice, smallSym, opts);
    // record the w_n^m slice
    Poly qWide = widenRing(q, sym);
    result += qWide * Poly::generator(sym, n - 1, 1).pow(m);
    checkBudget(result, opts, "toElementary");
    // subtract the reconstructed slice: q evaluated at e_1..e_{n-1}
    std::vector<Poly> images(n - 1, Poly::zero(tring));
    for (int i = 0; i + 1 < n; ++i) images[i] = es[i];
    residue += substitute(q, tring, images);
    checkBudget(residue, opts, "toElementary");
    if (!residue.isZero() && !eN.divides(residue.terms()[0])) {
      // every term must now be divisible by t_1...t_n; otherwise the input
      // was not symmetric
      for (const Mono& t : residue.terms())
        if (!eN.divides(t))
          throw NotSymmetricError("peel residue not divisible by t_1..t_n at " +
                                  tring->monoText(t));
    }
  }
  return result;
}

}  // namespace

Poly toElementary(const Poly& p, const RingPtr& sym, const SymfuncOptions& opts) {
  if (sym->numGens() != p.ring()->numGens())
    throw Error("toElementary: generator counts differ");
  checkSymmetric(p, opts);
  try {
    return toElementaryImpl(p, sym, opts);
  } catch (const NotDivisibleError& e) {
    throw NotSymmetricError("input is not symmetric (peel division failed at " +
                            e.offendingMonomial + ")");
  }
}

Poly evalAtElementary(const Poly& q, const RingPtr& tring) {
  const std::vector<Poly> es = elementaryPolys(tring);
  if (q.ring()->numGens() > static_cast<int>(es.size()))
    throw Error("evalAtElementary: too many generators");
  std::vector<Poly> images(q.ring()->numGens(), Poly::zero(tring));
  for (int i = 0; i < q.ring()->numGens(); ++i) images[i] = es[i];
  return substitute(q, tring, images);
}

Poly bhProduct(int n, int i, const SymfuncOptions& opts) {
  if (i < 1 || i > n) throw Error("bhProduct needs 1 <= i <= n");
  const RingPtr tring = makeTRing(n);
  Poly prod = Poly::one(tring);
  std::vector<int> subset(i);
  auto rec = [&](auto&& self, int start, int left) -> void {
    if (left == 0) {
      std::vector<Mono> monos;
      monos.push_back(Mono{});
      for (int k = 0; k < i; ++k) {
        Mono m;
        m.setExp(subset[k], 1);
        monos.push_back(m);
      }
      prod = prod * Poly::fromMonos(tring, std::move(monos));
      checkBudget(prod, opts, "bhProduct");
      return;
    }
    for (int v = start; v <= n - left; ++v) {
      subset[i - left] = v;
      self(self, v + 1, left - 1);
    }
  };
  rec(rec, 0, i);
  return prod;
}

Poly lambda2Total(int n, const SymfuncOptions& opts) {
  if (n < 2) throw Error("lambda2Total needs n >= 2");
  // base level: 1 + w_1 over two variables
  Poly phi = parsePoly(makeSymRing(2), "1 + w_1");
  for (int level = 3; level <= n; ++level) {
    const RingPtr prevSym = phi.ring();             // w_1..w_{level-1}
    const RingPtr sym = makeSymRing(level);         // w_1..w_level
    // hybrid ring: elementary symmetric classes of the first level-1
    // variables plus the new variable t
    std::vector<Ring::Generator> hgens;
    for (int i = 1; i < level; ++i) hgens.push_back({"w_" + std::to_string(i), i});
    hgens.push_back({"t", 1});
    const RingPtr hybrid = Ring::make("hybrid" + std::to_string(level), std::move(hgens));
    const int tIdx = level - 1;

    // correction factor: sum_k t^k sum_l binom(level-1-l, k) wbar_l
    std::vector<Mono> corrMonos;
    for (int k = 0; k <= level - 1; ++k)
      for (int l = 0; l <= level - 1 - k; ++l) {
        if (!binomMod2(static_cast<uint64_t>(level - 1 - l), static_cast<uint64_t>(k)))
          continue;
        Mono m;
        m.setExp(tIdx, k);
        if (l > 0) m.setExp(l - 1, 1);
        corrMonos.push_back(m);
      }
    const Poly corr = Poly::fromMonos(hybrid, std::move(corrMonos));

    Poly psi = widenRing(phi, hybrid) * corr;
    checkBudget(psi, opts, "lambda2Total");

    // images for rewriting slice polynomials back into hybrid coordinates:
    // w_i -> wbar_i + wbar_{i-1} t   (wbar_0 = 1)
    std::vector<Poly> subImages;
    for (int i = 1; i < level; ++i) {
      Mono a;
      a.setExp(i - 1, 1);
      Mono b;
      if (i >= 2) b.setExp(i - 2, 1);
      b.setExp(tIdx, b.exp(tIdx) + 1);
      subImages.push_back(Poly::fromMonos(hybrid, {a, b}));
    }

    Mono peel;  // wbar_{level-1} * t
    peel.setExp(level - 2, 1);
    peel.setExp(tIdx, 1);

    Poly next = Poly::zero(sym);
    for (int m = 0; !psi.isZero(); ++m) {
      if (m > 0) psi = exactDivide(psi, peel);
      // slice at t = 0, read as a polynomial over w_1..w_{level-1}
      std::vector<Mono> sliceMonos;
      for (const Mono& t : psi.terms())
        if (t.exp(tIdx) == 0) sliceMonos.push_back(t);
      Poly q = Poly::fromMonos(prevSym, std::move(sliceMonos));
      next += widenRing(q, sym) * Poly::generator(sym, level - 1, 1).pow(m);
      // remove the reconstructed slice from psi
      psi += substitute(q, hybrid, subImages);
      checkBudget(psi, opts, "lambda2Total");
    }
    phi = std::move(next);
    checkBudget(phi, opts, "lambda2Total");
  }
  return phi;
}

Poly chernExteriorSu(int n, int i, const RingPtr& bsu, const SymfuncOptions& opts) {
  if (n < 2 || i < 0 || i > n) throw Error("chernExteriorSu: bad parameters");
  if (i == 0 || i == n) return Poly::one(bsu);  // trivial summands
  const Poly product = bhProduct(n, i, opts);
  const RingPtr sym = makeSymRing(n);
  const Poly q = toElementary(product, sym, opts);
  // w_1 -> 0 (the SU condition c_1 = 0), w_j -> c_j
  std::vector<Poly> images(n, Poly::zero(bsu));
  for (int j = 2; j <= n; ++j) {
    const int idx = bsu->genIndex("c_" + std::to_string(j));
    if (idx < 0) throw Error("chernExteriorSu: target ring lacks c_" + std::to_string(j));
    images[j - 1] = Poly::generator(bsu, idx);
  }
  return substitute(q, bsu, images);
}

Poly swExteriorRestriction(int n, const SymfuncOptions& opts) {
  if (n < 2) throw Error("swExteriorRestriction needs n >= 2");
  return bhProduct(n, 2, opts);
}

}  // namespace swcalc
