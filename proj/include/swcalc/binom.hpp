#pragma once

#include <cstdint>

namespace swcalc {

// C(n, k) mod 2 by Lucas: odd exactly when k's binary digits sit inside n's.
constexpr int binomMod2(uint64_t n, uint64_t k) { return (n & k) == k ? 1 : 0; }

}  // namespace swcalc
