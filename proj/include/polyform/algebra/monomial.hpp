#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <utility>

#include <boost/container/small_vector.hpp>

#include "polyform/errors.hpp"

namespace polyform {

using VarIndex = std::uint32_t;

/// One factor x_var^exp of a monomial.
struct Power {
  VarIndex var = 0;
  std::uint32_t exp = 0;
  friend bool operator==(const Power&, const Power&) = default;
};

/// A monomial in canonical sparse form: powers sorted by strictly increasing variable index,
/// no zero exponents. Ordered graded-lexicographically (total degree first, then the exponent
/// vector compared lexicographically with x0 > x1 > ...).
class Monomial {
 public:
  using Storage = boost::container::small_vector<Power, 4>;

  Monomial() = default;

  /// Canonicalizes an arbitrary list of powers (merges repeated variables, drops zero exponents).
  Monomial(std::initializer_list<Power> powers) : Monomial(Storage(powers.begin(), powers.end())) {}

  explicit Monomial(Storage powers) : powers_(std::move(powers)) {
    std::sort(powers_.begin(), powers_.end(),
              [](const Power& a, const Power& b) { return a.var < b.var; });
    Storage merged;
    for (const Power& p : powers_) {
      if (p.exp == 0) continue;
      if (!merged.empty() && merged.back().var == p.var) {
        merged.back().exp += p.exp;
      } else {
        merged.push_back(p);
      }
    }
    powers_ = std::move(merged);
    for (const Power& p : powers_) degree_ += p.exp;
  }

  /// Product of the given variables (with repetition).
  static Monomial from_factors(std::span<const VarIndex> factors) {
    Storage s;
    s.reserve(factors.size());
    for (VarIndex v : factors) s.push_back(Power{v, 1});
    return Monomial(std::move(s));
  }

  static Monomial variable(VarIndex v) { return Monomial{Power{v, 1}}; }

  [[nodiscard]] std::span<const Power> powers() const { return {powers_.data(), powers_.size()}; }
  [[nodiscard]] std::uint32_t degree() const { return degree_; }
  [[nodiscard]] bool is_constant() const { return powers_.empty(); }

  /// Largest variable index + 1, or 0 for the constant monomial.
  [[nodiscard]] VarIndex span_end() const { return powers_.empty() ? 0 : powers_.back().var + 1; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.powers_.reserve(a.powers_.size() + b.powers_.size());
    auto i = a.powers_.begin();
    auto j = b.powers_.begin();
    while (i != a.powers_.end() || j != b.powers_.end()) {
      if (j == b.powers_.end() || (i != a.powers_.end() && i->var < j->var)) {
        out.powers_.push_back(*i++);
      } else if (i == a.powers_.end() || j->var < i->var) {
        out.powers_.push_back(*j++);
      } else {
        out.powers_.push_back(Power{i->var, i->exp + j->exp});
        ++i;
        ++j;
      }
    }
    out.degree_ = a.degree_ + b.degree_;
    return out;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.powers_ == b.powers_;
  }

  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    // Equal degree: the first variable where exponents differ decides; larger exponent is larger.
    auto i = a.powers_.begin();
    auto j = b.powers_.begin();
    while (i != a.powers_.end() && j != b.powers_.end()) {
      if (i->var != j->var) {
        // a carries a positive exponent on a variable where b has zero.
        return i->var < j->var ? std::strong_ordering::greater : std::strong_ordering::less;
      }
      if (i->exp != j->exp) return i->exp <=> j->exp;
      ++i;
      ++j;
    }
    // Equal degree forces both sequences to end together once all prefixes match.
    return std::strong_ordering::equal;
  }

 private:
  Storage powers_;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const Power& p : m.powers()) {
      std::uint64_t x = (std::uint64_t{p.var} << 32U) | p.exp;
      x ^= x >> 33U;
      x *= 0xff51afd7ed558ccdULL;
      x ^= x >> 33U;
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6U) + (h >> 2U);
    }
    return h;
  }
};

}  // namespace polyform
