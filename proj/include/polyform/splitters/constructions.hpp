#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyform/algebra/primes.hpp"
#include "polyform/combinatorics.hpp"
#include "polyform/errors.hpp"
#include "polyform/splitters/splitter.hpp"

namespace polyform {

// Desk-scale guards.
inline constexpr std::uint32_t kCodeMaxN = 1'000'000;
inline constexpr std::uint32_t kCodeMaxK = 12;
inline constexpr std::uint64_t kIntervalMaxCuts = 10'000'000;
inline constexpr std::uint64_t kKWiseMaxMembers = 10'000'000;
inline constexpr std::uint64_t kGreedyMaxSubsets = 1'000'000;
inline constexpr std::uint64_t kComposeMaxEntries = 50'000'000;

struct CodeParameters {
  std::uint64_t q = 0;  // field size = number of members = range
  unsigned d = 0;       // base-q digits per domain element
};

/// Least prime q >= k^2 such that, with d the least d >= 1 having q^d >= n, q >= d*k^2/2 + 1.
inline CodeParameters code_parameters(std::uint64_t n, std::uint64_t k) {
  std::uint64_t q = next_prime(k * k);
  while (true) {
    unsigned d = 1;
    while (saturating_pow(q, d) < n) ++d;
    if (2 * q >= d * k * k + 2) return {q, d};
    q = next_prime(q + 1);
  }
}

/// Reed-Solomon style injective splitter: member z maps x to its base-q digit polynomial at z.
inline SplitterFamily build_code_splitter(std::uint32_t n, std::uint32_t k) {
  if (k < 2) throw ParameterError("code splitter needs k >= 2");
  if (n < 1 || n > kCodeMaxN) throw ParameterError("code splitter needs 1 <= n <= 10^6");
  if (k > kCodeMaxK) throw ParameterError("code splitter needs k <= 12");
  const auto [q, d] = code_parameters(n, k);
  SplitterFamily h{n, k, static_cast<std::uint32_t>(q), SplitterKind::Injective, {}};
  std::vector<std::vector<std::uint64_t>> digits(n, std::vector<std::uint64_t>(d));
  for (std::uint64_t x = 0; x < n; ++x) {
    std::uint64_t r = x;
    for (unsigned i = 0; i < d; ++i, r /= q) digits[x][i] = r % q;
  }
  for (std::uint64_t z = 0; z < q; ++z) {
    Coloring f{h.range, std::vector<Color>(n)};
    for (std::uint64_t x = 0; x < n; ++x) {
      std::uint64_t acc = 0;
      for (unsigned i = d; i-- > 0;) acc = (acc * z + digits[x][i]) % q;
      f.table[x] = static_cast<Color>(acc);
    }
    h.members.push_back(std::move(f));
  }
  return h;
}

/// One member per cut sequence 0 = i_0 < i_1 < ... < i_l = n; x gets color t when i_t <= x < i_{t+1}.
inline SplitterFamily build_interval_splitter(std::uint32_t n, std::uint32_t k, std::uint32_t l) {
  if (l < 1 || l > k || k > n) throw ParameterError("interval splitter needs 1 <= l <= k <= n");
  if (binomial(n, l - 1) > kIntervalMaxCuts) throw ParameterError("interval splitter exceeds desk-scale cap");
  SplitterFamily h{n, k, l, SplitterKind::EvenSplit, {}};
  // Cuts are drawn from positions 1..n-1; enumerate them as (l-1)-combinations of [n-1] shifted by one.
  auto cuts = first_combination<std::uint32_t>(l - 1);
  do {
    Coloring f{l, std::vector<Color>(n)};
    Color t = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
      while (t < cuts.size() && cuts[t] + 1 <= x) ++t;
      f.table[x] = t;
    }
    h.members.push_back(std::move(f));
  } while (l > 1 && next_combination<std::uint32_t>(cuts, n - 1));
  return h;
}

/// Colorings x -> (c_0 + c_1 x + ... + c_{k-1} x^{k-1} mod q) mod range, one per coefficient vector.
struct KWiseFamily {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t range = 1;
  std::uint64_t q = 2;

  [[nodiscard]] std::uint64_t size() const { return saturating_pow(q, k); }

  /// Coefficients of member idx: base-q digits, c_0 least significant.
  [[nodiscard]] std::vector<std::uint64_t> coefficients(std::uint64_t idx) const {
    std::vector<std::uint64_t> c(k);
    for (auto& ci : c) {
      ci = idx % q;
      idx /= q;
    }
    return c;
  }

  /// Field value before range reduction.
  [[nodiscard]] std::uint64_t raw(std::uint64_t idx, std::uint64_t x) const {
    const auto c = coefficients(idx);
    std::uint64_t acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % q;
    return acc;
  }

  [[nodiscard]] Coloring member(std::uint64_t idx) const {
    const auto c = coefficients(idx);
    Coloring f{range, std::vector<Color>(n)};
    for (std::uint64_t x = 0; x < n; ++x) {
      std::uint64_t acc = 0;
      for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % q;
      f.table[x] = static_cast<Color>(acc % range);
    }
    return f;
  }
};

inline KWiseFamily build_kwise_family(std::uint32_t n, std::uint32_t k, std::uint32_t l) {
  if (n < 1 || k < 1 || l < 1) throw ParameterError("k-wise family needs positive n, k, l");
  const std::uint64_t q = next_prime(std::max(n, l));
  if (saturating_pow(q, k) > kKWiseMaxMembers) throw ParameterError("k-wise family exceeds desk-scale cap");
  return KWiseFamily{n, k, l, q};
}

/// Greedy injective splitter with range c*k drawn from the k-wise family. Each round takes the
/// member injective on the most uncovered k-subsets (lowest index on ties).
inline SplitterFamily build_greedy_splitter(std::uint32_t n, std::uint32_t k, std::uint32_t c) {
  if (n < 1 || k < 1 || c < 1) throw ParameterError("greedy splitter needs positive n, k, c");
  if (binomial(n, k) > kGreedyMaxSubsets) throw ParameterError("greedy splitter exceeds desk-scale cap");
  const auto family = build_kwise_family(n, k, c * k);
  SplitterFamily h{n, k, c * k, SplitterKind::Injective, {}};

  std::vector<std::vector<std::uint32_t>> remaining;
  if (k <= n) {
    auto s = first_combination<std::uint32_t>(k);
    do remaining.push_back(s);
    while (next_combination<std::uint32_t>(s, n));
  }
  if (remaining.empty()) {
    h.members.push_back(family.member(0));
    return h;
  }

  const double keep = std::exp(-static_cast<double>(k) / c);
  std::vector<std::uint32_t> counts;
  while (!remaining.empty()) {
    std::uint64_t best = 0;
    std::size_t best_hits = 0;
    for (std::uint64_t idx = 0; idx < family.size(); ++idx) {
      const Coloring f = family.member(idx);
      std::size_t hits = 0;
      for (const auto& s : remaining) hits += splits(f, s, SplitterKind::Injective, counts);
      if (hits > best_hits) {
        best_hits = hits;
        best = idx;
      }
    }
    const auto required = static_cast<std::size_t>(std::ceil(keep * remaining.size() - 1e-9));
    if (best_hits < required || best_hits == 0) {
      throw std::logic_error("greedy splitter round covered " + std::to_string(best_hits) + " of " +
                             std::to_string(remaining.size()) + " subsets, below the averaging bound");
    }
    Coloring chosen = family.member(best);
    std::erase_if(remaining, [&](const auto& s) { return splits(chosen, s, SplitterKind::Injective, counts); });
    h.members.push_back(std::move(chosen));
  }
  return h;
}

/// Greedy size bound ceil(e^{k/c} * k * ln n) + 1.
inline std::uint64_t greedy_size_bound(std::uint32_t n, std::uint32_t k, std::uint32_t c) {
  return static_cast<std::uint64_t>(std::ceil(std::exp(static_cast<double>(k) / c) * k * std::log(n))) + 1;
}

struct ComposeParameters {
  std::uint32_t parts = 1;     // L
  std::uint32_t part_size = 1; // ceil(k / L)
};

inline ComposeParameters compose_parameters(std::uint32_t k) {
  const std::uint32_t l = std::max(1U, ceil_log2(k));
  return {l, static_cast<std::uint32_t>(ceil_div(k, l))};
}

/// f(x) = R * b(a(x)) + h_{b(a(x))}(a(x)) over a in A (code splitter), b in B (interval splitter on
/// A's range into L parts) and (h_0..h_{L-1}) in C^L (greedy splitter on A's range), R = range of C.
inline SplitterFamily compose_splitter(std::uint32_t n, std::uint32_t k, std::uint32_t c) {
  const auto a = build_code_splitter(n, k);
  const auto [l, part] = compose_parameters(k);
  const auto b = build_interval_splitter(a.range, k, l);
  const auto h = build_greedy_splitter(a.range, part, c);
  const std::uint32_t r = h.range;

  const std::uint64_t tuples = saturating_pow(h.size(), l);
  const std::uint64_t total = a.size() * b.size() * tuples;
  if (tuples == UINT64_MAX || total / std::max<std::uint64_t>(1, a.size() * b.size()) != tuples ||
      total * n > kComposeMaxEntries) {
    throw ParameterError("composed splitter exceeds desk-scale cap");
  }

  SplitterFamily out{n, k, r * l, SplitterKind::Injective, {}};
  out.members.reserve(total);
  std::vector<std::size_t> pick(l);
  for (const Coloring& fa : a.members) {
    for (const Coloring& fb : b.members) {
      std::fill(pick.begin(), pick.end(), 0);
      for (std::uint64_t t = 0; t < tuples; ++t) {
        Coloring f{out.range, std::vector<Color>(n)};
        for (std::uint32_t x = 0; x < n; ++x) {
          const Color ax = fa(x);
          const Color part_of = fb(ax);
          f.table[x] = r * part_of + h.members[pick[part_of]](ax);
        }
        out.members.push_back(std::move(f));
        // Odometer over C^L with h_0 most significant.
        for (std::size_t j = l; j-- > 0;) {
          if (++pick[j] < h.size()) break;
          pick[j] = 0;
        }
      }
    }
  }
  return out;
}

}  // namespace polyform
