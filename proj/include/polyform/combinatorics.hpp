#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

namespace polyform {

/// C(n, r), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

/// Saturating base^exp.
inline std::uint64_t saturating_pow(std::uint64_t base, unsigned exp) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

/// ceil(log2(k)) for k >= 1.
inline unsigned ceil_log2(std::uint64_t k) { return k <= 1 ? 0 : static_cast<unsigned>(std::bit_width(k - 1)); }

/// Advances `c` (strictly increasing, values < n) to the next combination in lexicographic order.
/// Returns false after the last one.
template <typename T>
bool next_combination(std::vector<T>& c, T n) {
  const std::size_t r = c.size();
  for (std::size_t i = r; i-- > 0;) {
    if (c[i] < n - (r - i)) {
      ++c[i];
      for (std::size_t j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

template <typename T>
std::vector<T> first_combination(std::size_t r) {
  std::vector<T> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = static_cast<T>(i);
  return c;
}

/// Next larger integer with the same popcount (Gosper's hack); x must be nonzero.
inline std::uint64_t next_same_popcount(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2U) / c) | r;
}

/// Calls f(mask) for every submask of `set` (including 0 and `set`), in decreasing order.
template <typename F>
void for_each_submask(std::uint64_t set, F&& f) {
  std::uint64_t s = set;
  while (true) {
    f(s);
    if (s == 0) break;
    s = (s - 1) & set;
  }
}

inline int popcount(std::uint64_t x) { return std::popcount(x); }

}  // namespace polyform
