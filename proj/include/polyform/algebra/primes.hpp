#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "polyform/errors.hpp"

namespace polyform {

/// A prime modulus, optionally remembering the dyadic interval [2^{t+1}, 2^{t+2}] it was drawn from.
struct PrimeModulus {
  std::uint64_t p = 2;
  std::optional<unsigned> t;

  friend bool operator==(const PrimeModulus& a, const PrimeModulus& b) { return a.p == b.p; }
};

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace detail

/// Deterministic primality test: trial division below 10^6, Miller-Rabin with the first twelve
/// prime bases above (exact for every 64-bit input; the witness set is valid below 3.3e24).
inline bool is_prime(std::uint64_t n) {
  if (n < 1'000'000) return detail::is_prime_trial(n);
  if (n % 2 == 0) return false;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  constexpr std::array<std::uint64_t, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Least prime >= n.
inline std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  std::uint64_t c = n | 1U;
  while (!is_prime(c)) c += 2;
  return c;
}

inline constexpr unsigned kMaxDyadicExponent = 60;

/// Smallest prime p with 2^{t+1} <= p <= 2^{t+2}. Bertrand's postulate guarantees one exists.
inline PrimeModulus find_prime_in_dyadic_interval(unsigned t) {
  if (t > kMaxDyadicExponent) {
    throw ParameterError("dyadic exponent t=" + std::to_string(t) + " exceeds " +
                         std::to_string(kMaxDyadicExponent));
  }
  const std::uint64_t lo = std::uint64_t{1} << (t + 1);
  const std::uint64_t hi = std::uint64_t{1} << (t + 2);
  for (std::uint64_t c = lo; c <= hi; ++c) {
    if (is_prime(c)) return PrimeModulus{c, t};
  }
  throw std::logic_error("no prime in dyadic interval");  // unreachable by Bertrand
}

}  // namespace polyform
