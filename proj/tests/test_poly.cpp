#include <random>

#include "doctest.h"
#include "swcalc/binom.hpp"
#include "swcalc/gf2linalg.hpp"
#include "swcalc/gf2poly.hpp"

using namespace swcalc;

namespace {

RingPtr bspinLikeRing() {
  // y-generators of a rank-13 presentation, enough for the arithmetic tests.
  std::vector<Ring::Generator> gens;
  for (int i : {4, 6, 7, 8, 10, 11, 12, 13}) gens.push_back({"y_" + std::to_string(i), i});
  return Ring::make("ytest", std::move(gens));
}

RingPtr tRing(int n) {
  std::vector<Ring::Generator> gens;
  for (int i = 1; i <= n; ++i) gens.push_back({"t_" + std::to_string(i), 1});
  return Ring::make("t" + std::to_string(n), std::move(gens));
}

Poly randomPoly(const RingPtr& ring, std::mt19937_64& rng, int maxTerms, int maxExp) {
  std::uniform_int_distribution<int> termCount(0, maxTerms);
  std::uniform_int_distribution<int> expDist(0, maxExp);
  std::vector<Mono> monos;
  const int k = termCount(rng);
  for (int t = 0; t < k; ++t) {
    Mono m;
    for (int i = 0; i < ring->numGens(); ++i) m.setExp(i, expDist(rng));
    monos.push_back(m);
  }
  return Poly::fromMonos(ring, std::move(monos));
}

}  // namespace

TEST_CASE("addition is symmetric difference") {
  auto ring = bspinLikeRing();
  const Poly y4 = parsePoly(ring, "y_4");
  CHECK((y4 + y4).isZero());
  CHECK((parsePoly(ring, "y_4") + parsePoly(ring, "y_6")).text() == "y_6 + y_4");
  const Poly a = parsePoly(ring, "y_7*y_10 + y_6*y_11");
  const Poly b = parsePoly(ring, "y_6*y_11 + y_4*y_13");
  CHECK((a + b).text() == "y_7*y_10 + y_4*y_13");
}

TEST_CASE("ring mismatch is rejected") {
  auto r1 = bspinLikeRing();
  auto r2 = tRing(4);
  CHECK_THROWS_AS(parsePoly(r1, "y_4") + parsePoly(r2, "t_1"), RingMismatchError);
  CHECK_THROWS_AS(parsePoly(r1, "y_4") * parsePoly(r2, "t_1"), RingMismatchError);
  // structurally identical instances interoperate
  auto r3 = bspinLikeRing();
  CHECK((parsePoly(r1, "y_4") + parsePoly(r3, "y_4")).isZero());
}

TEST_CASE("multiplication basics and Frobenius") {
  auto ring = bspinLikeRing();
  const Poly one = Poly::one(ring);
  const Poly y4 = parsePoly(ring, "y_4");
  const Poly y6 = parsePoly(ring, "y_6");
  CHECK(((one + y4) * (one + y4)).text() == "y_4^2 + 1");
  CHECK((y4 * (y4 + y6)).text() == "y_4*y_6 + y_4^2");
  CHECK((one + y4).square() == (one + y4) * (one + y4));
}

TEST_CASE("triple product expansion has unit constant term") {
  auto ring = tRing(3);
  const Poly f1 = parsePoly(ring, "1 + t_1 + t_2");
  const Poly f2 = parsePoly(ring, "1 + t_1 + t_3");
  const Poly f3 = parsePoly(ring, "1 + t_2 + t_3");
  const Poly prod = f1 * f2 * f3;

  // Brute-force oracle: expand over all 2^3 choices per factor is overkill;
  // instead verify against a independently computed expansion.
  MonoAccumulator acc;
  const Poly factors[3] = {f1, f2, f3};
  std::vector<Mono> cur{Mono{}};
  for (const Poly& f : factors) {
    std::vector<Mono> next;
    for (const Mono& m : cur)
      for (const Mono& t : f.terms()) next.push_back(mulMono(m, t));
    cur = std::move(next);
  }
  for (const Mono& m : cur) acc.toggle(m);
  CHECK(prod == acc.toPoly(ring));
  CHECK(prod.gradedComponent(0).text() == "1");
  // top term pattern: degree-3 part of the product carries no t_1*t_2*t_3
  CHECK(!prod.gradedComponent(3).isZero());
  Mono t123;
  t123.setExp(0, 1);
  t123.setExp(1, 1);
  t123.setExp(2, 1);
  bool hasT123 = false;
  for (const Mono& m : prod.terms())
    if (m == t123) hasT123 = true;
  CHECK(!hasT123);
}

TEST_CASE("graded components partition the polynomial") {
  auto ring = bspinLikeRing();
  const Poly p = parsePoly(ring, "1 + y_4 + y_6 + y_7 + y_4*y_6 + y_13");
  CHECK(p.gradedComponent(7).text() == "y_7");
  CHECK(p.gradedComponent(5).isZero());
  Poly sum = Poly::zero(ring);
  for (int d : p.degreesPresent()) sum += p.gradedComponent(d);
  CHECK(sum == p);
}

TEST_CASE("leading monomial follows the graded order") {
  auto ring = bspinLikeRing();
  CHECK(ring->monoText(parsePoly(ring, "y_7*y_10 + y_6*y_11 + y_4*y_13").leadingMono()) ==
        "y_7*y_10");
  CHECK(ring->monoText(parsePoly(ring, "y_4").leadingMono()) == "y_4");
  CHECK_THROWS_AS(Poly::zero(ring).leadingMono(), ZeroPolynomialError);

  // Same degree, first differing exponent: the larger exponent loses.
  std::vector<Ring::Generator> gens{{"a_1", 1}, {"a_2", 2}, {"a_3", 3}};
  auto small = Ring::make("small", gens);
  CHECK(small->monoText(parsePoly(small, "a_3 + a_1*a_2").leadingMono()) == "a_3");
}

TEST_CASE("order is multiplicative") {
  auto ring = bspinLikeRing();
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 2000; ++iter) {
    Poly a = randomPoly(ring, rng, 1, 3), b = randomPoly(ring, rng, 1, 3),
         c = randomPoly(ring, rng, 1, 3);
    if (a.isZero() || b.isZero() || c.isZero()) continue;
    const Mono &ma = a.terms()[0], &mb = b.terms()[0], &mc = c.terms()[0];
    if (ma == mb) continue;
    const bool lt = ring->monoLess(ma, mb);
    CHECK(ring->monoLess(mulMono(ma, mc), mulMono(mb, mc)) == lt);
  }
}

TEST_CASE("leading monomial of products multiplies") {
  auto ring = bspinLikeRing();
  std::mt19937_64 rng(777);
  for (int iter = 0; iter < 500; ++iter) {
    Poly p = randomPoly(ring, rng, 6, 2), q = randomPoly(ring, rng, 6, 2);
    if (p.isZero() || q.isZero()) continue;
    CHECK((p * q).leadingMono() == mulMono(p.leadingMono(), q.leadingMono()));
  }
}

TEST_CASE("algebra laws on random polynomials") {
  auto ring = bspinLikeRing();
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 1200; ++iter) {
    Poly p = randomPoly(ring, rng, 8, 2);
    Poly q = randomPoly(ring, rng, 8, 2);
    Poly r = randomPoly(ring, rng, 8, 2);
    CHECK((p + q) == (q + p));
    CHECK(((p + q) + r) == (p + (q + r)));
    CHECK((p + p).isZero());
    CHECK((p * (q + r)) == (p * q + p * r));
    CHECK((p + q).square() == p.square() + q.square());
  }
}

TEST_CASE("binomial coefficients mod 2") {
  CHECK(binomMod2(0, 0) == 1);
  CHECK(binomMod2(17, 0) == 1);
  CHECK(binomMod2(2, 1) == 0);
  CHECK(binomMod2(63, 32) == 1);
  // Pascal recurrence oracle for all n, k <= 256.
  std::vector<std::vector<uint8_t>> pascal(257, std::vector<uint8_t>(258, 0));
  for (int n = 0; n <= 256; ++n) {
    pascal[n][0] = 1;
    for (int k = 1; k <= n; ++k)
      pascal[n][k] = static_cast<uint8_t>((pascal[n - 1][k - 1] + (k <= n - 1 ? pascal[n - 1][k] : 0)) & 1);
  }
  for (int n = 0; n <= 256; ++n)
    for (int k = 0; k <= 256; ++k)
      CHECK(binomMod2(n, k) == (k <= n ? pascal[n][k] : 0));
}

TEST_CASE("exact division") {
  auto ring = bspinLikeRing();
  const Poly p = parsePoly(ring, "y_4^2*y_6");
  Mono y4;
  y4.setExp(0, 1);
  CHECK(exactDivide(p, y4).text() == "y_4*y_6");
  CHECK(exactDivide(Poly::zero(ring), y4).isZero());
  Mono y6;
  y6.setExp(1, 1);
  CHECK(exactDivide(parsePoly(ring, "y_4*y_6 + y_6"), y6).text() == "y_4 + 1");
  CHECK_THROWS_AS(exactDivide(parsePoly(ring, "y_4 + y_6"), y6), NotDivisibleError);
  // multiply back
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    Poly q = randomPoly(ring, rng, 5, 2);
    Mono m;
    m.setExp(iter % ring->numGens(), 1 + iter % 2);
    Poly prod = q * Poly::monomial(ring, m);
    CHECK(exactDivide(prod, m) == q);
  }
}

TEST_CASE("gf2 solver") {
  SUBCASE("identity system") {
    BitMatrix a(2, 2);
    a.set(0, 0, true);
    a.set(1, 1, true);
    auto sol = solveGf2(a, {1, 0});
    CHECK(sol.particular == std::vector<uint8_t>{1, 0});
    CHECK(sol.nullBasis.empty());
    CHECK(sol.rank == 2);
  }
  SUBCASE("underdetermined") {
    BitMatrix a(1, 2);
    a.set(0, 0, true);
    a.set(0, 1, true);
    auto sol = solveGf2(a, {0});
    CHECK(sol.particular == std::vector<uint8_t>{0, 0});
    REQUIRE(sol.nullBasis.size() == 1);
    CHECK(sol.nullBasis[0] == std::vector<uint8_t>{1, 1});
    CHECK(sol.underdetermined());
  }
  SUBCASE("inconsistent") {
    BitMatrix a(2, 1);
    a.set(0, 0, true);
    a.set(1, 0, true);
    CHECK_THROWS_AS(solveGf2(a, {0, 1}), InconsistentSystemError);
  }
  SUBCASE("solutions verify and nullspace annihilates") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int iter = 0; iter < 300; ++iter) {
      const size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
      BitMatrix a(rows, cols);
      for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) a.set(r, c, bit(rng));
      // choose a consistent rhs
      std::vector<uint8_t> x(cols);
      for (auto& v : x) v = static_cast<uint8_t>(bit(rng));
      std::vector<uint8_t> b(rows, 0);
      for (size_t r = 0; r < rows; ++r) {
        int acc = 0;
        for (size_t c = 0; c < cols; ++c) acc ^= (a.get(r, c) & x[c]);
        b[r] = static_cast<uint8_t>(acc);
      }
      auto sol = solveGf2(a, b);
      auto apply = [&](const std::vector<uint8_t>& v) {
        std::vector<uint8_t> out(rows, 0);
        for (size_t r = 0; r < rows; ++r) {
          int acc = 0;
          for (size_t c = 0; c < cols; ++c) acc ^= (a.get(r, c) & v[c]);
          out[r] = static_cast<uint8_t>(acc);
        }
        return out;
      };
      CHECK(apply(sol.particular) == b);
      for (const auto& v : sol.nullBasis)
        CHECK(apply(v) == std::vector<uint8_t>(rows, 0));
      CHECK(sol.rank + sol.nullBasis.size() == cols);
    }
  }
}

TEST_CASE("canonical text round trip") {
  auto ring = bspinLikeRing();
  const std::string canon = "y_7*y_10 + y_6*y_11 + y_4*y_13";
  CHECK(parsePoly(ring, canon).text() == canon);
  CHECK(parsePoly(ring, "  y_4 *y_13+y_6* y_11\n + y_7*y_10 ").text() == canon);
  CHECK(parsePoly(ring, "0").isZero());
  CHECK(Poly::zero(ring).text() == "0");
  CHECK(parsePoly(ring, "1").text() == "1");
  CHECK_THROWS_AS(parsePoly(ring, "y_4 + y_4"), ParseError);
  CHECK_THROWS_AS(parsePoly(ring, "z_9"), ParseError);
}

TEST_CASE("substitution") {
  auto ring = bspinLikeRing();
  auto tring = tRing(4);
  // y_4 -> t_1 + t_2, y_6 -> t_3, everything else -> 0
  std::vector<Poly> images(ring->numGens(), Poly::zero(tring));
  images[0] = parsePoly(tring, "t_1 + t_2");
  images[1] = parsePoly(tring, "t_3");
  const Poly p = parsePoly(ring, "y_4^2 + y_4*y_6 + y_7");
  const Poly expect = parsePoly(tring, "t_1^2 + t_2^2 + t_1*t_3 + t_2*t_3");
  CHECK(substitute(p, tring, images) == expect);
}

TEST_CASE("deterministic products regardless of operand order") {
  auto ring = bspinLikeRing();
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 200; ++iter) {
    Poly p = randomPoly(ring, rng, 12, 2), q = randomPoly(ring, rng, 12, 2);
    CHECK((p * q).text() == (q * p).text());
  }
}
