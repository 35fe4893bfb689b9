#pragma once

// Sparse multivariate polynomial arithmetic over GF(2).
//
// A monomial packs up to 16 exponents (one byte each) into two machine
// words; a polynomial is a canonically sorted set of monomials, addition
// is symmetric difference. Rings carry generator names, degrees and the
// graded monomial order used throughout: lower total degree first, ties
// broken at the first generator index where exponents differ, where the
// larger exponent makes the smaller monomial.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swcalc {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class RingMismatchError : public Error {
 public:
  using Error::Error;
};

class ExponentOverflowError : public Error {
 public:
  using Error::Error;
};

class DegreeOverflowError : public Error {
 public:
  using Error::Error;
};

class NotDivisibleError : public Error {
 public:
  NotDivisibleError(const std::string& msg, const std::string& offender)
      : Error(msg), offendingMonomial(offender) {}
  std::string offendingMonomial;
};

class ZeroPolynomialError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

namespace detail {

constexpr uint64_t kByteHigh = 0x8080808080808080ull;

inline bool byteAddOverflow(uint64_t a, uint64_t b) {
  const uint64_t s = a + b;
  const uint64_t carry = (a & b) | ((a ^ b) & ~s);
  return (carry & kByteHigh) != 0;
}

inline bool byteSubBorrow(uint64_t a, uint64_t b) {
  const uint64_t d = a - b;
  const uint64_t borrow = (~a & b) | (~(a ^ b) & d);
  return (borrow & kByteHigh) != 0;
}

inline uint64_t mix64(uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ull;
  x ^= x >> 33;
  return x;
}

}  // namespace detail

// Exponent vector for up to 16 generators, one byte per generator.
struct Mono {
  uint64_t lo = 0;
  uint64_t hi = 0;

  static constexpr int kMaxGens = 16;

  friend bool operator==(const Mono&, const Mono&) = default;

  int exp(int i) const {
    const uint64_t w = (i < 8) ? lo : hi;
    return static_cast<int>((w >> (8 * (i & 7))) & 0xffu);
  }

  void setExp(int i, int e) {
    uint64_t& w = (i < 8) ? lo : hi;
    const int sh = 8 * (i & 7);
    w = (w & ~(uint64_t{0xff} << sh)) | (uint64_t(e) << sh);
  }

  bool isOne() const { return lo == 0 && hi == 0; }

  int totalExp() const {
    int s = 0;
    for (int i = 0; i < kMaxGens; ++i) s += exp(i);
    return s;
  }

  bool divides(const Mono& m) const {
    return !detail::byteSubBorrow(m.lo, lo) && !detail::byteSubBorrow(m.hi, hi);
  }

  uint64_t hash() const {
    return detail::mix64(lo ^ detail::mix64(hi + 0x9e3779b97f4a7c15ull));
  }
};

Mono mulMono(const Mono& a, const Mono& b);
Mono divMono(const Mono& a, const Mono& b);  // requires b.divides(a)
Mono frobeniusMono(const Mono& a);           // exponent doubling
Mono gcdMono(const Mono& a, const Mono& b);
Mono lcmMono(const Mono& a, const Mono& b);

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
 public:
  struct Generator {
    std::string name;
    int degree = 1;
  };

  static RingPtr make(std::string name, std::vector<Generator> gens);

  const std::string& name() const { return name_; }
  int numGens() const { return static_cast<int>(gens_.size()); }
  const Generator& gen(int i) const { return gens_[i]; }
  const std::vector<Generator>& gens() const { return gens_; }
  int genIndex(const std::string& name) const;  // -1 when absent

  // Same name and same generator list; distinct instances of the same ring
  // are interchangeable.
  bool sameStructure(const Ring& other) const;

  int degree(const Mono& m) const {
    int64_t d = 0;
    for (int i = 0; i < numGens(); ++i) d += int64_t(m.exp(i)) * gens_[i].degree;
    if (d > INT32_MAX) throw DegreeOverflowError("monomial degree overflows 32 bits");
    return static_cast<int>(d);
  }

  // Graded order; same degree compares at the first index with differing
  // exponents, larger exponent first index => smaller monomial.
  bool monoLess(const Mono& a, const Mono& b) const;

  std::string monoText(const Mono& m) const;

 private:
  Ring(std::string name, std::vector<Generator> gens);
  std::string name_;
  std::vector<Generator> gens_;
};

// Canonical term list: ascending in the ring order, duplicate-free.
class Poly {
 public:
  Poly() = default;  // detached zero; usable only after assignment

  static Poly zero(RingPtr ring);
  static Poly one(RingPtr ring);
  static Poly monomial(RingPtr ring, const Mono& m);
  static Poly generator(RingPtr ring, int index, int exponent = 1);
  // Sorts and cancels duplicate pairs mod 2.
  static Poly fromMonos(RingPtr ring, std::vector<Mono> monos);
  // Trusts the input to be sorted ascending and duplicate-free.
  static Poly fromSortedMonos(RingPtr ring, std::vector<Mono> monos);

  const RingPtr& ring() const { return ring_; }
  bool isZero() const { return terms_.empty(); }
  size_t termCount() const { return terms_.size(); }
  std::span<const Mono> terms() const { return terms_; }

  Poly& operator+=(const Poly& q);
  friend Poly operator+(Poly p, const Poly& q) { p += q; return p; }
  friend Poly operator*(const Poly& p, const Poly& q) { return mulImpl(p, q, -1); }
  friend bool operator==(const Poly& p, const Poly& q);

  Poly mulTruncated(const Poly& q, int maxDeg) const { return mulImpl(*this, q, maxDeg); }
  Poly square() const;
  Poly pow(int e) const;
  Poly powTruncated(int e, int maxDeg) const;

  Poly gradedComponent(int d) const;
  Poly truncated(int maxDeg) const;  // drops components above maxDeg
  int maxDegree() const;             // zero polynomial => -1
  int minDegree() const;
  bool isHomogeneous(int* degreeOut = nullptr) const;
  std::vector<int> degreesPresent() const;

  const Mono& leadingMono() const;  // order-maximal term; throws on zero

  std::string text() const;  // canonical form, descending terms

 private:
  static Poly mulImpl(const Poly& p, const Poly& q, int maxDeg);
  RingPtr ring_;
  std::vector<Mono> terms_;
};

Poly parsePoly(const RingPtr& ring, const std::string& text);

// Quotient p / m; every term of p must be divisible by m.
Poly exactDivide(const Poly& p, const Mono& m);

// Maps each generator of p's ring to images[i] in the target ring and
// expands. Negative maxDeg means no truncation.
Poly substitute(const Poly& p, const RingPtr& target, std::span<const Poly> images,
                int maxDeg = -1);

void sortMonos(const Ring& ring, std::vector<Mono>& monos);

// Open-addressed XOR set of monomials; the workhorse behind products,
// substitution and reduction. toggle() inserts a missing key and erases a
// present one.
class MonoAccumulator {
 public:
  explicit MonoAccumulator(size_t expected = 16);

  void toggle(const Mono& m);
  bool contains(const Mono& m) const;
  size_t size() const { return live_; }
  void setBudget(size_t maxTerms) { budget_ = maxTerms; }

  template <typename Fn>
  void forEach(Fn&& fn) const {
    for (size_t i = 0; i < slots_.size(); ++i)
      if (used_[i]) fn(slots_[i]);
  }

  std::vector<Mono> takeMonos();              // unsorted; clears the set
  Poly toPoly(const RingPtr& ring) const;     // sorted snapshot

 private:
  size_t probe(const Mono& m) const;
  void grow();
  std::vector<Mono> slots_;
  std::vector<uint8_t> used_;
  size_t live_ = 0;
  size_t budget_ = 0;  // 0 = unlimited
};

}  // namespace swcalc
