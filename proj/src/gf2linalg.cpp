#include "swcalc/gf2linalg.hpp"

#include <algorithm>

namespace swcalc {

namespace {

struct Echelon {
  BitMatrix m;
  std::vector<size_t> pivotCol;   // per pivot row
  std::vector<size_t> rowOrigin;  // original index of each current row
};

// Reduced row echelon form, lowest column pivot first.
Echelon rref(BitMatrix m) {
  Echelon e{std::move(m), {}, {}};
  e.rowOrigin.resize(e.m.rows());
  for (size_t r = 0; r < e.m.rows(); ++r) e.rowOrigin[r] = r;
  size_t row = 0;
  for (size_t col = 0; col < e.m.cols() && row < e.m.rows(); ++col) {
    size_t pivot = row;
    while (pivot < e.m.rows() && !e.m.get(pivot, col)) ++pivot;
    if (pivot == e.m.rows()) continue;
    e.m.swapRows(row, pivot);
    std::swap(e.rowOrigin[row], e.rowOrigin[pivot]);
    for (size_t r = 0; r < e.m.rows(); ++r)
      if (r != row && e.m.get(r, col)) e.m.xorRows(r, row);
    e.pivotCol.push_back(col);
    ++row;
  }
  return e;
}

}  // namespace

Gf2Solution solveGf2(BitMatrix a, std::vector<uint8_t> b) {
  if (b.size() != a.rows()) throw Error("solveGf2: dimension mismatch");
  const size_t n = a.cols();
  BitMatrix aug(a.rows(), n + 1);
  for (size_t r = 0; r < a.rows(); ++r) {
    for (size_t c = 0; c < n; ++c)
      if (a.get(r, c)) aug.set(r, c, true);
    if (b[r]) aug.set(r, n, true);
  }
  Echelon e = rref(std::move(aug));

  Gf2Solution sol;
  sol.particular.assign(n, 0);
  std::vector<int> pivotOfCol(n, -1);
  for (size_t i = 0; i < e.pivotCol.size(); ++i) {
    const size_t col = e.pivotCol[i];
    if (col == n)
      throw InconsistentSystemError("inconsistent linear system at row " +
                                        std::to_string(e.rowOrigin[i]),
                                    e.rowOrigin[i]);
    pivotOfCol[col] = static_cast<int>(i);
    if (e.m.get(i, n)) sol.particular[col] = 1;
  }
  sol.rank = e.pivotCol.size();

  for (size_t freeCol = 0; freeCol < n; ++freeCol) {
    if (pivotOfCol[freeCol] >= 0) continue;
    std::vector<uint8_t> v(n, 0);
    v[freeCol] = 1;
    for (size_t col = 0; col < n; ++col) {
      const int pr = pivotOfCol[col];
      if (pr >= 0 && e.m.get(static_cast<size_t>(pr), freeCol)) v[col] = 1;
    }
    sol.nullBasis.push_back(std::move(v));
  }
  rrefRows(sol.nullBasis);
  return sol;
}

std::vector<std::vector<uint8_t>> nullspaceGf2(BitMatrix a) {
  std::vector<uint8_t> zero(a.rows(), 0);
  Gf2Solution sol = solveGf2(std::move(a), std::move(zero));
  return sol.nullBasis;
}

size_t rankGf2(BitMatrix a) { return rref(std::move(a)).pivotCol.size(); }

void rrefRows(std::vector<std::vector<uint8_t>>& rows) {
  if (rows.empty()) return;
  const size_t n = rows[0].size();
  size_t row = 0;
  for (size_t col = 0; col < n && row < rows.size(); ++col) {
    size_t pivot = row;
    while (pivot < rows.size() && !rows[pivot][col]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[row], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == row || !rows[r][col]) continue;
      for (size_t c = 0; c < n; ++c) rows[r][c] ^= rows[row][c];
    }
    ++row;
  }
  rows.resize(row);
}

}  // namespace swcalc
