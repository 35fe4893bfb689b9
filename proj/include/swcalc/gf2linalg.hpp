#pragma once

// Dense linear algebra over GF(2) on bit-packed rows. Elimination always
// pivots on the lowest free column, so results are reproducible.

#include <cstdint>
#include <string>
#include <vector>

#include "swcalc/gf2poly.hpp"

namespace swcalc {

class InconsistentSystemError : public Error {
 public:
  InconsistentSystemError(const std::string& msg, size_t row)
      : Error(msg), violatedRow(row) {}
  size_t violatedRow;
};

class BitMatrix {
 public:
  BitMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64), words_(rows * stride_, 0) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  bool get(size_t r, size_t c) const {
    return (words_[r * stride_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(size_t r, size_t c, bool v) {
    uint64_t& w = words_[r * stride_ + c / 64];
    const uint64_t bit = uint64_t{1} << (c % 64);
    if (v)
      w |= bit;
    else
      w &= ~bit;
  }
  void xorRows(size_t dst, size_t src) {
    uint64_t* d = &words_[dst * stride_];
    const uint64_t* s = &words_[src * stride_];
    for (size_t i = 0; i < stride_; ++i) d[i] ^= s[i];
  }
  void swapRows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < stride_; ++i)
      std::swap(words_[a * stride_ + i], words_[b * stride_ + i]);
  }
  bool rowIsZero(size_t r) const {
    const uint64_t* w = &words_[r * stride_];
    for (size_t i = 0; i < stride_; ++i)
      if (w[i] != 0) return false;
    return true;
  }

 private:
  size_t rows_, cols_, stride_;
  std::vector<uint64_t> words_;
};

struct Gf2Solution {
  std::vector<uint8_t> particular;               // one solution of Ax = b
  std::vector<std::vector<uint8_t>> nullBasis;   // reduced basis of ker A
  size_t rank = 0;
  bool underdetermined() const { return !nullBasis.empty(); }
};

// Solves Ax = b. Throws InconsistentSystemError naming the offending row
// (tracked through swaps) when no solution exists.
Gf2Solution solveGf2(BitMatrix a, std::vector<uint8_t> b);

// Reduced (fully eliminated) basis of the nullspace of A.
std::vector<std::vector<uint8_t>> nullspaceGf2(BitMatrix a);

size_t rankGf2(BitMatrix a);

// In-place reduced row echelon form of dense 0/1 row vectors; zero rows are
// dropped and rows end up sorted by leading coordinate.
void rrefRows(std::vector<std::vector<uint8_t>>& rows);

}  // namespace swcalc
