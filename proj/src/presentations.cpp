#include "swcalc/presentations.hpp"

#include <algorithm>
#include <map>

#include "swcalc/gf2linalg.hpp"
#include "swcalc/steenrod.hpp"

namespace swcalc {

RingPtr makeBsoRing(int n) {
  if (n < 2) throw Error("BSO ring needs n >= 2");
  std::vector<Ring::Generator> gens;
  for (int i = 2; i <= n; ++i) gens.push_back({"w_" + std::to_string(i), i});
  return Ring::make("bso" + std::to_string(n), std::move(gens));
}

RingPtr makeBsuRing(int n) {
  if (n < 2) throw Error("BSU ring needs n >= 2");
  std::vector<Ring::Generator> gens;
  for (int i = 2; i <= n; ++i) gens.push_back({"c_" + std::to_string(i), 2 * i});
  return Ring::make("bsu" + std::to_string(n), std::move(gens));
}

int spinH(int n) {
  if (n < 3) throw Error("spinH needs n >= 3");
  switch (n % 8) {
    case 0: return (n - 2) / 2;
    case 1:
    case 7: return (n - 1) / 2;
    case 2:
    case 4:
    case 6: return n / 2;
    default: return (n + 1) / 2;  // 3, 5 mod 8
  }
}

std::vector<Poly> jGenerators(int n) {
  const int h = spinH(n);
  auto bso = makeBsoRing(n);
  // A free presentation of BSO(n) itself carries the Wu-formula action.
  auto free = std::make_shared<PresentedRing>();
  free->name = bso->name();
  free->vars = bso;
  free->ambientDim = n;
  SteenrodContext ctx(free);

  std::vector<Poly> gens;
  Poly g = Poly::generator(bso, bso->genIndex("w_2"));
  gens.push_back(g);
  for (int k = 0; k + 1 < h; ++k) {
    g = ctx.sq(1 << k, g);
    gens.push_back(g);
  }
  return gens;
}

Poly normalFormByBasis(const Poly& p, std::span<const Poly> basis) {
  if (basis.empty() || p.isZero()) return p;
  const RingPtr& ring = p.ring();
  Poly work = p;
  std::vector<Mono> outDesc;
  while (!work.isZero()) {
    const Mono m = work.leadingMono();
    const Poly* red = nullptr;
    for (const Poly& g : basis) {
      if (g.isZero()) continue;
      if (g.leadingMono().divides(m)) {
        red = &g;
        break;
      }
    }
    if (red == nullptr) {
      outDesc.push_back(m);
      work += Poly::monomial(ring, m);
    } else {
      work += *red * Poly::monomial(ring, divMono(m, red->leadingMono()));
    }
  }
  std::reverse(outDesc.begin(), outDesc.end());
  return Poly::fromSortedMonos(ring, std::move(outDesc));
}

std::vector<Poly> buchbergerReduced(std::vector<Poly> gens) {
  std::vector<Poly> input;
  RingPtr ring;
  for (Poly& g : gens) {
    if (g.isZero()) continue;
    if (!g.isHomogeneous()) throw Error("buchberger needs homogeneous generators");
    if (!ring) ring = g.ring();
    if (g.ring() != ring) throw RingMismatchError("buchberger: mixed rings");
    input.push_back(std::move(g));
  }
  if (input.empty()) return {};

  std::vector<Poly> basis;
  for (const Poly& g : input) {
    Poly r = normalFormByBasis(g, basis);
    if (!r.isZero()) basis.push_back(std::move(r));
  }

  struct SPair {
    size_t i, j;
    Mono lcm;
    int deg;
  };
  std::vector<SPair> pending;
  auto pushPairs = [&](size_t j) {
    for (size_t i = 0; i < j; ++i) {
      const Mono lcm = lcmMono(basis[i].leadingMono(), basis[j].leadingMono());
      pending.push_back({i, j, lcm, ring->degree(lcm)});
    }
  };
  for (size_t j = 1; j < basis.size(); ++j) pushPairs(j);

  while (!pending.empty()) {
    // Normal selection: lowest lcm degree, then the order on the lcm.
    size_t best = 0;
    for (size_t k = 1; k < pending.size(); ++k) {
      const SPair &a = pending[k], &b = pending[best];
      if (a.deg != b.deg) {
        if (a.deg < b.deg) best = k;
      } else if (!(a.lcm == b.lcm)) {
        if (ring->monoLess(a.lcm, b.lcm)) best = k;
      } else if (std::tie(a.i, a.j) < std::tie(b.i, b.j)) {
        best = k;
      }
    }
    SPair pair = pending[best];
    pending.erase(pending.begin() + best);

    const Mono &lti = basis[pair.i].leadingMono(), &ltj = basis[pair.j].leadingMono();
    if (gcdMono(lti, ltj).isOne()) continue;  // product criterion
    Poly spoly = basis[pair.i] * Poly::monomial(ring, divMono(pair.lcm, lti)) +
                 basis[pair.j] * Poly::monomial(ring, divMono(pair.lcm, ltj));
    Poly r = normalFormByBasis(spoly, basis);
    if (r.isZero()) continue;
    basis.push_back(std::move(r));
    pushPairs(basis.size() - 1);
  }

  // Minimalize: drop elements whose leading term another one divides.
  std::vector<Poly> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Mono &a = basis[i].leadingMono(), &b = basis[j].leadingMono();
      if (b.divides(a) && (!(a == b) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }

  // Tail-reduce each element against the others until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < minimal.size(); ++i) {
      std::vector<Poly> others;
      for (size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      Poly r = normalFormByBasis(minimal[i], others);
      if (!(r == minimal[i])) {
        minimal[i] = std::move(r);
        changed = true;
      }
    }
  }

  std::sort(minimal.begin(), minimal.end(), [&ring](const Poly& a, const Poly& b) {
    return ring->monoLess(a.leadingMono(), b.leadingMono());
  });
  return minimal;
}

Poly PresentedRing::normalForm(const Poly& p) const {
  if (p.ring() != vars)
    throw RingMismatchError("normalForm: polynomial not in ring '" + name + "'");
  if (relations.empty() || p.isZero()) return p;

  MonoAccumulator acc(p.termCount() * 2);
  for (const Mono& t : p.terms()) acc.toggle(t);

  std::vector<Mono> lts;
  lts.reserve(relations.size());
  for (const Poly& r : relations) lts.push_back(r.leadingMono());

  std::vector<std::pair<Mono, size_t>> reducible;
  while (true) {
    reducible.clear();
    acc.forEach([&](const Mono& m) {
      for (size_t k = 0; k < lts.size(); ++k)
        if (lts[k].divides(m)) {
          reducible.push_back({m, k});
          break;
        }
    });
    if (reducible.empty()) break;
    for (const auto& [m, k] : reducible) {
      if (!acc.contains(m)) continue;  // cancelled by an earlier rewrite
      acc.toggle(m);
      const Mono q = divMono(m, lts[k]);
      const auto terms = relations[k].terms();
      for (size_t t = 0; t + 1 < terms.size(); ++t)  // tail = all but leading
        acc.toggle(mulMono(q, terms[t]));
    }
  }
  return acc.toPoly(vars);
}

Poly PresentedRing::liftToAmbient(const Poly& p) const {
  if (!ambient) return p;
  if (p.ring() != vars) throw RingMismatchError("liftToAmbient: wrong ring");
  std::vector<Mono> monos;
  monos.reserve(p.termCount());
  for (const Mono& t : p.terms()) {
    Mono out;
    for (int i = 0; i < vars->numGens(); ++i) {
      const int e = t.exp(i);
      if (e == 0) continue;
      if (ambientOfVar[i] < 0)
        throw Error("liftToAmbient: u generator has no ambient representative");
      out.setExp(ambientOfVar[i], e);
    }
    monos.push_back(out);
  }
  return Poly::fromMonos(ambient, std::move(monos));
}

Poly PresentedRing::projectFromAmbient(const Poly& p) const {
  if (!ambient) return normalForm(p);
  if (p.ring() != ambient) throw RingMismatchError("projectFromAmbient: wrong ring");
  std::vector<int> varOfAmbient(ambient->numGens(), -1);
  for (int i = 0; i < vars->numGens(); ++i)
    if (ambientOfVar[i] >= 0) varOfAmbient[ambientOfVar[i]] = i;
  std::vector<Mono> monos;
  monos.reserve(p.termCount());
  for (const Mono& t : p.terms()) {
    Mono out;
    bool killed = false;
    for (int i = 0; i < ambient->numGens() && !killed; ++i) {
      const int e = t.exp(i);
      if (e == 0) continue;
      if (varOfAmbient[i] < 0) {
        killed = true;  // eliminated generator, zero in the quotient
        break;
      }
      out.setExp(varOfAmbient[i], e);
    }
    if (!killed) monos.push_back(out);
  }
  return normalForm(Poly::fromMonos(vars, std::move(monos)));
}

namespace {

#include "bspin_golden.inc"

const std::vector<const char*>* goldenRelations(int n) {
  for (const auto& [rank, rels] : kBspinRelationGolden)
    if (rank == n) return &rels;
  return nullptr;
}

}  // namespace

PresentedRingPtr makeBspinRing(int n) {
  if (n < 3) throw Error("makeBspinRing needs n >= 3");
  const int h = spinH(n);
  auto bso = makeBsoRing(n);
  std::vector<Poly> gb = buchbergerReduced(jGenerators(n));

  std::vector<bool> eliminated(bso->numGens(), false);
  std::vector<Poly> ambientRels;
  for (const Poly& g : gb) {
    const Mono& lt = g.leadingMono();
    if (g.termCount() == 1 && lt.totalExp() == 1) {
      for (int i = 0; i < bso->numGens(); ++i)
        if (lt.exp(i) == 1) eliminated[i] = true;
    } else {
      ambientRels.push_back(g);
    }
  }

  // Structural shape of the reduced basis: the first min(h, 4) of
  // {w_2, w_3, w_5, w_9} are eliminated outright, the rest are relations.
  const int expectElim = std::min(h, 4);
  std::vector<int> elimDegrees;
  for (int i = 0; i < bso->numGens(); ++i)
    if (eliminated[i]) elimDegrees.push_back(bso->gen(i).degree);
  const std::vector<int> expected{2, 3, 5, 9};
  if (elimDegrees !=
      std::vector<int>(expected.begin(), expected.begin() + expectElim))
    throw GoldenMismatchError("unexpected eliminated generators in BSpin(" +
                              std::to_string(n) + ")");
  if (static_cast<int>(ambientRels.size()) != std::max(0, h - 4))
    throw GoldenMismatchError("unexpected relation count in BSpin(" + std::to_string(n) +
                              "): got " + std::to_string(ambientRels.size()));

  auto ring = std::make_shared<PresentedRing>();
  ring->name = "bspin" + std::to_string(n);
  ring->ambient = bso;
  ring->ambientDim = n;
  std::vector<Ring::Generator> gens;
  for (int i = 4; i <= n; ++i) {
    if (i == 5 || i == 9) continue;
    gens.push_back({"y_" + std::to_string(i), i});
    ring->ambientOfVar.push_back(bso->genIndex("w_" + std::to_string(i)));
  }
  ring->uIndex = static_cast<int>(gens.size());
  gens.push_back({"u_" + std::to_string(1 << h), 1 << h});
  ring->ambientOfVar.push_back(-1);
  ring->vars = Ring::make(ring->name, std::move(gens));

  // Rename the surviving relations into the quotient generators.
  for (const Poly& rel : ambientRels) {
    std::vector<Mono> monos;
    for (const Mono& t : rel.terms()) {
      Mono out;
      for (int i = 0; i < bso->numGens(); ++i) {
        const int e = t.exp(i);
        if (e == 0) continue;
        const int deg = bso->gen(i).degree;
        const int idx = ring->vars->genIndex("y_" + std::to_string(deg));
        if (idx < 0)
          throw GoldenMismatchError("relation of BSpin(" + std::to_string(n) +
                                    ") touches an eliminated generator");
        out.setExp(idx, e);
      }
      monos.push_back(out);
    }
    ring->relations.push_back(Poly::fromMonos(ring->vars, std::move(monos)));
  }
  std::sort(ring->relations.begin(), ring->relations.end(),
            [&](const Poly& a, const Poly& b) {
              return ring->vars->monoLess(a.leadingMono(), b.leadingMono());
            });

  if (const auto* golden = goldenRelations(n)) {
    if (golden->size() != ring->relations.size())
      throw GoldenMismatchError("BSpin(" + std::to_string(n) +
                                "): relation count differs from the stored text");
    for (size_t k = 0; k < golden->size(); ++k) {
      const std::string computed = ring->relations[k].text();
      if (computed != (*golden)[k])
        throw GoldenMismatchError("BSpin(" + std::to_string(n) + ") relation " +
                                  std::to_string(k + 1) + " mismatch:\n  computed: " +
                                  computed + "\n  stored:   " + (*golden)[k]);
    }
  }
  return ring;
}

PresentedRingPtr makeBsuPresented(int n) {
  auto ring = std::make_shared<PresentedRing>();
  ring->name = "bsu" + std::to_string(n);
  ring->vars = makeBsuRing(n);
  return ring;
}

Poly RingHom::apply(const Poly& p) const {
  if (p.ring() != source->vars) throw RingMismatchError("hom '" + name + "': wrong source");
  return target->normalForm(substitute(p, target->vars, images));
}

void RingHom::checkWellDefined() const {
  if (static_cast<int>(images.size()) != source->vars->numGens())
    throw IllDefinedHomError("hom '" + name + "': image count mismatch");
  for (int i = 0; i < source->vars->numGens(); ++i) {
    const Poly& img = images[i];
    if (img.isZero()) continue;
    int d = 0;
    if (!img.isHomogeneous(&d) || d != source->vars->gen(i).degree)
      throw IllDefinedHomError("hom '" + name + "': image of " +
                               source->vars->gen(i).name + " is not degree-preserving");
  }
  for (const Poly& rel : source->relations)
    if (!apply(rel).isZero())
      throw IllDefinedHomError("hom '" + name + "': relation " + rel.text() +
                               " does not map to zero");
}

DegreeBasis degreeBasis(const PresentedRingPtr& ring, int d) {
  DegreeBasis basis;
  basis.ring = ring;
  basis.degree = d;
  const RingPtr& vars = ring->vars;
  std::vector<Mono> lts;
  for (const Poly& r : ring->relations) lts.push_back(r.leadingMono());

  std::vector<Mono> out;
  Mono current;
  auto reducible = [&](const Mono& m) {
    for (const Mono& lt : lts)
      if (lt.divides(m)) return true;
    return false;
  };
  // Enumerate exponents generator by generator; divisibility is monotone in
  // the exponents, so a reducible partial monomial prunes its whole subtree.
  auto rec = [&](auto&& self, int idx, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    if (idx >= vars->numGens()) return;
    const int deg = vars->gen(idx).degree;
    self(self, idx + 1, remaining);  // exponent 0
    for (int e = 1; e * deg <= remaining; ++e) {
      current.setExp(idx, e);
      if (reducible(current)) break;
      self(self, idx + 1, remaining - e * deg);
    }
    current.setExp(idx, 0);
  };
  rec(rec, 0, d);
  sortMonos(*vars, out);
  std::reverse(out.begin(), out.end());
  basis.monos = std::move(out);
  return basis;
}

namespace {

struct CoordinateSpace {
  std::map<std::pair<size_t, std::string>, size_t> index;  // (hom block, monomial text)
  size_t add(size_t block, const std::string& key) {
    auto [it, inserted] = index.try_emplace({block, key}, index.size());
    return it->second;
  }
};

}  // namespace

std::vector<Poly> kernelInDegree(std::span<const RingHom> homs, int d) {
  if (homs.empty()) throw Error("kernelInDegree: no homomorphisms");
  const PresentedRingPtr& source = homs.front().source;
  for (const RingHom& h : homs)
    if (h.source != source) throw Error("kernelInDegree: sources differ");

  const DegreeBasis basis = degreeBasis(source, d);
  const size_t cols = basis.monos.size();
  std::vector<std::vector<Poly>> images(homs.size());
  CoordinateSpace coords;
  for (size_t hIdx = 0; hIdx < homs.size(); ++hIdx) {
    for (const Mono& m : basis.monos) {
      Poly img = homs[hIdx].apply(Poly::monomial(source->vars, m));
      for (const Mono& t : img.terms())
        coords.add(hIdx, homs[hIdx].target->vars->monoText(t));
      images[hIdx].push_back(std::move(img));
    }
  }
  BitMatrix a(coords.index.size(), cols);
  for (size_t hIdx = 0; hIdx < homs.size(); ++hIdx)
    for (size_t c = 0; c < cols; ++c)
      for (const Mono& t : images[hIdx][c].terms()) {
        const size_t r = coords.add(hIdx, homs[hIdx].target->vars->monoText(t));
        a.set(r, c, true);
      }
  std::vector<std::vector<uint8_t>> null = nullspaceGf2(std::move(a));
  std::vector<Poly> out;
  for (const auto& v : null) {
    std::vector<Mono> monos;
    for (size_t c = 0; c < cols; ++c)
      if (v[c]) monos.push_back(basis.monos[c]);
    out.push_back(Poly::fromMonos(source->vars, std::move(monos)));
  }
  return out;
}

PreimageResult preimageInDegree(std::span<const RingHom> homs,
                                std::span<const Poly> targets, int d) {
  if (homs.empty() || homs.size() != targets.size())
    throw Error("preimageInDegree: homs/targets mismatch");
  const PresentedRingPtr& source = homs.front().source;
  for (const Poly& t : targets)
    if (!t.isZero() && !t.isHomogeneous())
      throw Error("preimageInDegree: target not homogeneous");

  const DegreeBasis basis = degreeBasis(source, d);
  const size_t cols = basis.monos.size();
  std::vector<std::vector<Poly>> images(homs.size());
  CoordinateSpace coords;
  for (size_t hIdx = 0; hIdx < homs.size(); ++hIdx) {
    for (const Mono& m : basis.monos) {
      Poly img = homs[hIdx].apply(Poly::monomial(source->vars, m));
      for (const Mono& t : img.terms())
        coords.add(hIdx, homs[hIdx].target->vars->monoText(t));
      images[hIdx].push_back(std::move(img));
    }
    for (const Mono& t : targets[hIdx].terms())
      coords.add(hIdx, homs[hIdx].target->vars->monoText(t));
  }
  const size_t rows = coords.index.size();
  BitMatrix a(rows, cols);
  std::vector<uint8_t> rhs(rows, 0);
  std::vector<std::string> rowLabel(rows);
  for (auto& [key, r] : coords.index) rowLabel[r] = key.second;
  for (size_t hIdx = 0; hIdx < homs.size(); ++hIdx) {
    for (size_t c = 0; c < cols; ++c)
      for (const Mono& t : images[hIdx][c].terms())
        a.set(coords.add(hIdx, homs[hIdx].target->vars->monoText(t)), c, true);
    for (const Mono& t : targets[hIdx].terms())
      rhs[coords.add(hIdx, homs[hIdx].target->vars->monoText(t))] = 1;
  }
  Gf2Solution sol;
  try {
    sol = solveGf2(std::move(a), std::move(rhs));
  } catch (const InconsistentSystemError& e) {
    throw NoPreimageError("no preimage in degree " + std::to_string(d) +
                          "; unreachable residue at " + rowLabel[e.violatedRow]);
  }
  PreimageResult result;
  std::vector<Mono> monos;
  for (size_t c = 0; c < cols; ++c)
    if (sol.particular[c]) monos.push_back(basis.monos[c]);
  result.particular = Poly::fromMonos(source->vars, std::move(monos));
  for (const auto& v : sol.nullBasis) {
    std::vector<Mono> km;
    for (size_t c = 0; c < cols; ++c)
      if (v[c]) km.push_back(basis.monos[c]);
    result.kernel.push_back(Poly::fromMonos(source->vars, std::move(km)));
  }
  return result;
}

}  // namespace swcalc
