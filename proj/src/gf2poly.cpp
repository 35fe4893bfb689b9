#include "swcalc/gf2poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <unordered_map>

namespace swcalc {

Mono mulMono(const Mono& a, const Mono& b) {
  if (detail::byteAddOverflow(a.lo, b.lo) || detail::byteAddOverflow(a.hi, b.hi))
    throw ExponentOverflowError("monomial product exceeds exponent 255");
  return Mono{a.lo + b.lo, a.hi + b.hi};
}

Mono divMono(const Mono& a, const Mono& b) {
  if (!b.divides(a)) throw NotDivisibleError("monomial division is not exact", "");
  return Mono{a.lo - b.lo, a.hi - b.hi};
}

Mono frobeniusMono(const Mono& a) {
  if (((a.lo | a.hi) & detail::kByteHigh) != 0)
    throw ExponentOverflowError("doubled exponent exceeds 255");
  return Mono{a.lo << 1, a.hi << 1};
}

namespace {

uint64_t byteMin(uint64_t a, uint64_t b) {
  uint64_t r = 0;
  for (int i = 0; i < 8; ++i) {
    const uint64_t x = (a >> (8 * i)) & 0xff, y = (b >> (8 * i)) & 0xff;
    r |= (x < y ? x : y) << (8 * i);
  }
  return r;
}

uint64_t byteMax(uint64_t a, uint64_t b) {
  uint64_t r = 0;
  for (int i = 0; i < 8; ++i) {
    const uint64_t x = (a >> (8 * i)) & 0xff, y = (b >> (8 * i)) & 0xff;
    r |= (x > y ? x : y) << (8 * i);
  }
  return r;
}

}  // namespace

Mono gcdMono(const Mono& a, const Mono& b) {
  return Mono{byteMin(a.lo, b.lo), byteMin(a.hi, b.hi)};
}

Mono lcmMono(const Mono& a, const Mono& b) {
  return Mono{byteMax(a.lo, b.lo), byteMax(a.hi, b.hi)};
}

Ring::Ring(std::string name, std::vector<Generator> gens)
    : name_(std::move(name)), gens_(std::move(gens)) {
  if (gens_.size() > Mono::kMaxGens)
    throw Error("ring '" + name_ + "' needs more than 16 generators");
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].degree < 1) throw Error("generator degree must be positive");
    for (size_t j = 0; j < i; ++j)
      if (gens_[j].name == gens_[i].name)
        throw Error("duplicate generator name '" + gens_[i].name + "'");
  }
}

RingPtr Ring::make(std::string name, std::vector<Generator> gens) {
  return RingPtr(new Ring(std::move(name), std::move(gens)));
}

int Ring::genIndex(const std::string& name) const {
  for (int i = 0; i < numGens(); ++i)
    if (gens_[i].name == name) return i;
  return -1;
}

bool Ring::sameStructure(const Ring& other) const {
  if (this == &other) return true;
  if (name_ != other.name_ || gens_.size() != other.gens_.size()) return false;
  for (size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name != other.gens_[i].name || gens_[i].degree != other.gens_[i].degree)
      return false;
  return true;
}

bool Ring::monoLess(const Mono& a, const Mono& b) const {
  const int da = degree(a), db = degree(b);
  if (da != db) return da < db;
  uint64_t x = a.lo ^ b.lo;
  if (x != 0) {
    const int i = std::countr_zero(x) / 8;
    return a.exp(i) > b.exp(i);
  }
  x = a.hi ^ b.hi;
  if (x != 0) {
    const int i = 8 + std::countr_zero(x) / 8;
    return a.exp(i) > b.exp(i);
  }
  return false;
}

std::string Ring::monoText(const Mono& m) const {
  if (m.isOne()) return "1";
  std::string out;
  for (int i = 0; i < numGens(); ++i) {
    const int e = m.exp(i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += gens_[i].name;
    if (e > 1) {
      out += '^';
      out += std::to_string(e);
    }
  }
  return out;
}

Poly Poly::zero(RingPtr ring) {
  Poly p;
  p.ring_ = std::move(ring);
  return p;
}

Poly Poly::one(RingPtr ring) { return monomial(std::move(ring), Mono{}); }

Poly Poly::monomial(RingPtr ring, const Mono& m) {
  Poly p;
  p.ring_ = std::move(ring);
  p.terms_ = {m};
  return p;
}

Poly Poly::generator(RingPtr ring, int index, int exponent) {
  if (index < 0 || index >= ring->numGens()) throw Error("generator index out of range");
  if (exponent < 0 || exponent > 255) throw ExponentOverflowError("exponent out of range");
  Mono m;
  m.setExp(index, exponent);
  return monomial(std::move(ring), m);
}

void sortMonos(const Ring& ring, std::vector<Mono>& monos) {
  struct Rec {
    int deg;
    Mono m;
  };
  std::vector<Rec> recs;
  recs.reserve(monos.size());
  for (const Mono& m : monos) recs.push_back({ring.degree(m), m});
  std::sort(recs.begin(), recs.end(), [&ring](const Rec& a, const Rec& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    uint64_t x = a.m.lo ^ b.m.lo;
    if (x != 0) {
      const int i = std::countr_zero(x) / 8;
      return a.m.exp(i) > b.m.exp(i);
    }
    x = a.m.hi ^ b.m.hi;
    if (x != 0) {
      const int i = 8 + std::countr_zero(x) / 8;
      return a.m.exp(i) > b.m.exp(i);
    }
    return false;
  });
  for (size_t i = 0; i < recs.size(); ++i) monos[i] = recs[i].m;
}

Poly Poly::fromMonos(RingPtr ring, std::vector<Mono> monos) {
  sortMonos(*ring, monos);
  std::vector<Mono> out;
  out.reserve(monos.size());
  for (size_t i = 0; i < monos.size();) {
    size_t j = i;
    while (j < monos.size() && monos[j] == monos[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(monos[i]);
    i = j;
  }
  Poly p;
  p.ring_ = std::move(ring);
  p.terms_ = std::move(out);
  return p;
}

Poly Poly::fromSortedMonos(RingPtr ring, std::vector<Mono> monos) {
  Poly p;
  p.ring_ = std::move(ring);
  p.terms_ = std::move(monos);
  return p;
}

namespace {

void requireSameRing(const Poly& p, const Poly& q) {
  if (p.ring() == q.ring()) return;
  if (p.ring() && q.ring() && p.ring()->sameStructure(*q.ring())) return;
  throw RingMismatchError("operands live in different rings ('" +
                          (p.ring() ? p.ring()->name() : std::string("<none>")) + "' vs '" +
                          (q.ring() ? q.ring()->name() : std::string("<none>")) + "')");
}

}  // namespace

Poly& Poly::operator+=(const Poly& q) {
  requireSameRing(*this, q);
  const Ring& ring = *ring_;
  std::vector<Mono> out;
  out.reserve(terms_.size() + q.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < q.terms_.size()) {
    if (terms_[i] == q.terms_[j]) {
      ++i;
      ++j;
    } else if (ring.monoLess(terms_[i], q.terms_[j])) {
      out.push_back(terms_[i++]);
    } else {
      out.push_back(q.terms_[j++]);
    }
  }
  out.insert(out.end(), terms_.begin() + i, terms_.end());
  out.insert(out.end(), q.terms_.begin() + j, q.terms_.end());
  terms_ = std::move(out);
  return *this;
}

bool operator==(const Poly& p, const Poly& q) {
  if (p.ring_ != q.ring_) {
    if (!p.ring_ || !q.ring_ || !p.ring_->sameStructure(*q.ring_)) return false;
  }
  return p.terms_ == q.terms_;
}

Poly Poly::mulImpl(const Poly& p, const Poly& q, int maxDeg) {
  requireSameRing(p, q);
  const RingPtr& ring = p.ring_;
  if (p.isZero() || q.isZero()) return zero(ring);
  const Poly& big = p.termCount() >= q.termCount() ? p : q;
  const Poly& small = p.termCount() >= q.termCount() ? q : p;
  std::vector<int> bigDeg(big.termCount()), smallDeg(small.termCount());
  for (size_t i = 0; i < big.termCount(); ++i) bigDeg[i] = ring->degree(big.terms_[i]);
  for (size_t i = 0; i < small.termCount(); ++i) smallDeg[i] = ring->degree(small.terms_[i]);
  MonoAccumulator acc(big.termCount() * 2);
  for (size_t i = 0; i < small.termCount(); ++i) {
    for (size_t j = 0; j < big.termCount(); ++j) {
      if (maxDeg >= 0 && smallDeg[i] + bigDeg[j] > maxDeg) continue;
      acc.toggle(mulMono(small.terms_[i], big.terms_[j]));
    }
  }
  std::vector<Mono> monos = acc.takeMonos();
  sortMonos(*ring, monos);
  return fromSortedMonos(ring, std::move(monos));
}

Poly Poly::square() const {
  std::vector<Mono> monos;
  monos.reserve(terms_.size());
  for (const Mono& m : terms_) monos.push_back(frobeniusMono(m));
  // Frobenius preserves the order, so the result is already sorted.
  return fromSortedMonos(ring_, std::move(monos));
}

Poly Poly::pow(int e) const { return powTruncated(e, -1); }

Poly Poly::powTruncated(int e, int maxDeg) const {
  if (e < 0) throw Error("negative exponent");
  Poly result = one(ring_);
  Poly base = *this;
  while (e > 0) {
    if (e & 1) result = result.mulTruncated(base, maxDeg);
    e >>= 1;
    if (e > 0) base = base.square();
  }
  if (maxDeg >= 0) result = result.truncated(maxDeg);
  return result;
}

Poly Poly::gradedComponent(int d) const {
  std::vector<Mono> monos;
  for (const Mono& m : terms_)
    if (ring_->degree(m) == d) monos.push_back(m);
  return fromSortedMonos(ring_, std::move(monos));
}

Poly Poly::truncated(int maxDeg) const {
  std::vector<Mono> monos;
  for (const Mono& m : terms_)
    if (ring_->degree(m) <= maxDeg) monos.push_back(m);
  return fromSortedMonos(ring_, std::move(monos));
}

int Poly::maxDegree() const {
  int d = -1;
  for (const Mono& m : terms_) d = std::max(d, ring_->degree(m));
  return d;
}

int Poly::minDegree() const {
  if (terms_.empty()) return -1;
  int d = INT32_MAX;
  for (const Mono& m : terms_) d = std::min(d, ring_->degree(m));
  return d;
}

bool Poly::isHomogeneous(int* degreeOut) const {
  if (terms_.empty()) {
    if (degreeOut) *degreeOut = 0;
    return true;
  }
  const int d = ring_->degree(terms_.front());
  for (const Mono& m : terms_)
    if (ring_->degree(m) != d) return false;
  if (degreeOut) *degreeOut = d;
  return true;
}

std::vector<int> Poly::degreesPresent() const {
  std::vector<int> ds;
  for (const Mono& m : terms_) ds.push_back(ring_->degree(m));
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  return ds;
}

const Mono& Poly::leadingMono() const {
  if (terms_.empty()) throw ZeroPolynomialError("zero polynomial has no leading monomial");
  return terms_.back();
}

std::string Poly::text() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += ring_->monoText(*it);
  }
  return out;
}

Poly exactDivide(const Poly& p, const Mono& m) {
  std::vector<Mono> monos;
  monos.reserve(p.termCount());
  for (const Mono& t : p.terms()) {
    if (!m.divides(t))
      throw NotDivisibleError("term not divisible in exact division", p.ring()->monoText(t));
    monos.push_back(Mono{t.lo - m.lo, t.hi - m.hi});
  }
  // Dividing every term by the same monomial preserves the order.
  return Poly::fromSortedMonos(p.ring(), std::move(monos));
}

namespace {

struct Trimmed {
  const char* b;
  const char* e;
};

Trimmed trim(const char* b, const char* e) {
  while (b < e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(e[-1]))) --e;
  return {b, e};
}

}  // namespace

Poly parsePoly(const RingPtr& ring, const std::string& text) {
  std::vector<std::pair<const char*, const char*>> termSpans;
  const char* b = text.data();
  const char* end = text.data() + text.size();
  const char* cur = b;
  for (const char* p = b;; ++p) {
    if (p == end || *p == '+') {
      termSpans.emplace_back(cur, p);
      if (p == end) break;
      cur = p + 1;
    }
  }
  std::vector<Mono> monos;
  bool sawZero = false;
  for (auto [tb, te] : termSpans) {
    auto [s, e] = trim(tb, te);
    if (s == e) throw ParseError("empty term in '" + text + "'");
    std::string termText(s, e);
    // split factors on '*'
    Mono m;
    bool isZeroTerm = false;
    size_t pos = 0;
    while (pos < termText.size()) {
      size_t star = termText.find('*', pos);
      std::string factor = termText.substr(pos, star == std::string::npos ? std::string::npos
                                                                          : star - pos);
      auto [fb, fe] = trim(factor.data(), factor.data() + factor.size());
      std::string f(fb, fe);
      if (f.empty()) throw ParseError("empty factor in term '" + termText + "'");
      if (f == "1") {
        // multiplicative identity
      } else if (f == "0") {
        isZeroTerm = true;
      } else {
        std::string name = f;
        int exponent = 1;
        if (size_t caret = f.find('^'); caret != std::string::npos) {
          name = f.substr(0, caret);
          auto [nb, ne] = trim(name.data(), name.data() + name.size());
          name.assign(nb, ne);
          std::string expText = f.substr(caret + 1);
          auto [eb, ee] = trim(expText.data(), expText.data() + expText.size());
          expText.assign(eb, ee);
          if (expText.empty()) throw ParseError("missing exponent in '" + f + "'");
          exponent = 0;
          for (char c : expText) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
              throw ParseError("bad exponent in '" + f + "'");
            exponent = exponent * 10 + (c - '0');
            if (exponent > 255) throw ParseError("exponent above 255 in '" + f + "'");
          }
          if (exponent < 1) throw ParseError("exponent must be positive in '" + f + "'");
        }
        const int idx = ring->genIndex(name);
        if (idx < 0)
          throw ParseError("unknown generator '" + name + "' in ring '" + ring->name() + "'");
        const int newExp = m.exp(idx) + exponent;
        if (newExp > 255) throw ParseError("exponent above 255 for '" + name + "'");
        m.setExp(idx, newExp);
      }
      if (star == std::string::npos) break;
      pos = star + 1;
    }
    if (isZeroTerm) {
      if (!m.isOne() || termSpans.size() != 1)
        throw ParseError("'0' must stand alone in '" + text + "'");
      sawZero = true;
      continue;
    }
    monos.push_back(m);
  }
  if (sawZero) return Poly::zero(ring);
  std::vector<Mono> sorted = monos;
  sortMonos(*ring, sorted);
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw ParseError("duplicate term '" + ring->monoText(sorted[i]) + "' in input");
  return Poly::fromSortedMonos(ring, std::move(sorted));
}

Poly substitute(const Poly& p, const RingPtr& target, std::span<const Poly> images,
                int maxDeg) {
  if (static_cast<int>(images.size()) != p.ring()->numGens())
    throw Error("substitute: one image required per generator");
  for (const Poly& img : images)
    if (!img.isZero() && img.ring() != target)
      throw RingMismatchError("substitute: image not in target ring");

  // Fast path: every image is zero or a single monomial.
  bool allMonomial = true;
  for (const Poly& img : images)
    if (img.termCount() > 1) {
      allMonomial = false;
      break;
    }
  const int n = p.ring()->numGens();
  if (allMonomial) {
    std::vector<Mono> monos;
    monos.reserve(p.termCount());
    for (const Mono& t : p.terms()) {
      Mono out;
      bool zero = false;
      for (int i = 0; i < n && !zero; ++i) {
        const int e = t.exp(i);
        if (e == 0) continue;
        if (images[i].isZero()) {
          zero = true;
          break;
        }
        const Mono& im = images[i].terms()[0];
        for (int k = 0; k < e; ++k) out = mulMono(out, im);
      }
      if (zero) continue;
      if (maxDeg >= 0 && target->degree(out) > maxDeg) continue;
      monos.push_back(out);
    }
    return Poly::fromMonos(target, std::move(monos));
  }

  // General path: per-generator Frobenius power ladders.
  std::vector<std::vector<Poly>> ladders(n);
  auto power = [&](int gen, int bit) -> const Poly& {
    auto& ladder = ladders[gen];
    if (ladder.empty()) ladder.push_back(images[gen]);
    while (static_cast<int>(ladder.size()) <= bit) ladder.push_back(ladder.back().square());
    return ladder[bit];
  };

  MonoAccumulator acc(p.termCount() * 2);
  for (const Mono& t : p.terms()) {
    Poly termValue = Poly::one(target);
    bool zero = false;
    for (int i = 0; i < n && !zero; ++i) {
      int e = t.exp(i);
      if (e == 0) continue;
      if (images[i].isZero()) {
        zero = true;
        break;
      }
      for (int bit = 0; e != 0; ++bit, e >>= 1) {
        if (e & 1) {
          termValue = termValue.mulTruncated(power(i, bit), maxDeg);
          if (termValue.isZero()) {
            zero = true;
            break;
          }
        }
      }
    }
    if (zero) continue;
    for (const Mono& m : termValue.terms()) acc.toggle(m);
  }
  std::vector<Mono> monos = acc.takeMonos();
  sortMonos(*target, monos);
  return Poly::fromSortedMonos(target, std::move(monos));
}

MonoAccumulator::MonoAccumulator(size_t expected) {
  size_t cap = 16;
  while (cap < expected * 2) cap <<= 1;
  slots_.resize(cap);
  used_.assign(cap, 0);
}

size_t MonoAccumulator::probe(const Mono& m) const {
  const size_t mask = slots_.size() - 1;
  size_t i = m.hash() & mask;
  while (used_[i] && !(slots_[i] == m)) i = (i + 1) & mask;
  return i;
}

void MonoAccumulator::grow() {
  std::vector<Mono> oldSlots = std::move(slots_);
  std::vector<uint8_t> oldUsed = std::move(used_);
  slots_.assign(oldSlots.size() * 2, Mono{});
  used_.assign(oldSlots.size() * 2, 0);
  const size_t saved = live_;
  live_ = 0;
  for (size_t i = 0; i < oldSlots.size(); ++i) {
    if (!oldUsed[i]) continue;
    const size_t j = probe(oldSlots[i]);
    slots_[j] = oldSlots[i];
    used_[j] = 1;
    ++live_;
  }
  if (live_ != saved) throw Error("accumulator rehash lost entries");
}

void MonoAccumulator::toggle(const Mono& m) {
  const size_t mask = slots_.size() - 1;
  size_t i = probe(m);
  if (used_[i]) {
    // Backward-shift deletion keeps probe chains intact.
    size_t j = i;
    while (true) {
      j = (j + 1) & mask;
      if (!used_[j]) break;
      const size_t home = slots_[j].hash() & mask;
      const bool homeInHole = (i <= j) ? (i < home && home <= j) : (i < home || home <= j);
      if (homeInHole) continue;
      slots_[i] = slots_[j];
      i = j;
    }
    used_[i] = 0;
    --live_;
    return;
  }
  slots_[i] = m;
  used_[i] = 1;
  ++live_;
  if (budget_ != 0 && live_ > budget_)
    throw BudgetExceededError("term budget exceeded (" + std::to_string(budget_) + " terms)");
  if (live_ * 3 > slots_.size() * 2) grow();
}

bool MonoAccumulator::contains(const Mono& m) const { return used_[probe(m)]; }

std::vector<Mono> MonoAccumulator::takeMonos() {
  std::vector<Mono> out;
  out.reserve(live_);
  for (size_t i = 0; i < slots_.size(); ++i)
    if (used_[i]) out.push_back(slots_[i]);
  slots_.assign(16, Mono{});
  used_.assign(16, 0);
  live_ = 0;
  return out;
}

Poly MonoAccumulator::toPoly(const RingPtr& ring) const {
  std::vector<Mono> out;
  out.reserve(live_);
  for (size_t i = 0; i < slots_.size(); ++i)
    if (used_[i]) out.push_back(slots_[i]);
  sortMonos(*ring, out);
  return Poly::fromSortedMonos(ring, std::move(out));
}

}  // namespace swcalc
