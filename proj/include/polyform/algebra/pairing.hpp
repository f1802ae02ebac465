#pragma once

#include <cstdint>

#include "polyform/algebra/polynomial.hpp"

namespace polyform {

/// Cantor pairing (s + k)(s + k + 1)/2 + k. Injective on pairs of nonnegative integers.
inline Integer cantor_pair(const Integer& s, const Integer& k) {
  const Integer sum = s + k;
  return sum * (sum + 1) / 2 + k;
}

inline Integer cantor_pair(std::uint64_t s, std::uint64_t k) {
  return cantor_pair(Integer{s}, Integer{k});
}

}  // namespace polyform
