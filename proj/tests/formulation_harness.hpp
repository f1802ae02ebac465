#pragma once

// Wraps a formulation with the bookkeeping checks every oracle sweep repeats: declared degree,
// value bounds, and agreement between integer and mod-p evaluation.

#include <string>
#include <vector>

#include "polyform/formulations.hpp"

namespace polyform::harness {

inline std::uint32_t binom(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint32_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint32_t>(r);
}

/// Degree bound each problem is expected to declare, as a function of theta (and k for SAT).
inline std::uint32_t expected_delta(const Params& p) {
  const std::uint32_t th = p.theta;
  switch (p.problem) {
    case Problem::HamPath:
    case Problem::Matching3d:
    case Problem::KSetSplitting:
    case Problem::KInternalSpanningTree:
    case Problem::KLeafSpanningTree:
      return th;
    case Problem::IndependentSet:
    case Problem::Clique:
    case Problem::VertexCover:
      return binom(th, 2);
    case Problem::MaxKSat:
    case Problem::KSat:
      return binom(th, p.k.value_or(1));
    case Problem::GraphColoring:
      return 2 * th * th + th;
    case Problem::SetCover:
      return (th + 1) * th;
    case Problem::KVertexCover:
    case Problem::KNonblocker:
      return th * th;
    case Problem::KSteinerTree:
      return th + 1;
    case Problem::KPath:
      return 2 * th - 1;
  }
  return 0;
}

/// Smallest t with 2^{t+1} > 2 * count, so every value up to count lies below p / 2.
inline unsigned prime_exponent(std::size_t count) {
  unsigned t = 0;
  while ((std::uint64_t{1} << t) <= count) ++t;
  return t;
}

class Checked {
 public:
  explicit Checked(Formulation f) : f_(std::move(f)) {
    count_ = f_.poly.size();
    prime_ = find_prime_in_dyadic_interval(prime_exponent(count_));
    reduced_ = reduce_mod(f_.poly, prime_);
    if (f_.delta != expected_delta(f_.params)) {
      static_violations_.push_back("declared delta " + std::to_string(f_.delta) + " != expected " +
                                   std::to_string(expected_delta(f_.params)));
    }
    if (f_.poly.degree() > f_.delta) static_violations_.push_back("degree exceeds delta");
    if (f_.s() < 64 && count_ >= (std::uint64_t{1} << f_.s())) static_violations_.push_back("#monomials >= 2^s");
    for (const auto& [mono, coeff] : f_.poly.terms()) {
      if (coeff <= 0) {
        static_violations_.push_back("nonpositive coefficient");
        break;
      }
    }
  }

  [[nodiscard]] const Formulation& formulation() const { return f_; }
  [[nodiscard]] const std::vector<std::string>& static_violations() const { return static_violations_; }

  /// Steiner budgets are read at assignment time, so one formulation serves every t <= w.
  void set_t(std::uint32_t t) { f_.params.t = t; }

  /// Decision on x; bookkeeping failures are appended to `violations`.
  bool decide_on(const Instance& x, std::vector<std::string>& violations) const {
    const Assignment a = assign(f_, x);
    const Decision d = decide(f_, a);
    if (d.value > Integer(count_)) violations.push_back("value exceeds #monomials");
    const Integer modp = evaluate_boolean(reduced_, a);
    if ((modp != 0) != d.yes) violations.push_back("mod-p decision disagrees");
    if (Integer(2) * d.value >= Integer(prime_.p)) violations.push_back("value not below p/2");
    return d.yes;
  }

 private:
  Formulation f_;
  std::size_t count_ = 0;
  PrimeModulus prime_;
  SparsePolynomial reduced_;
  std::vector<std::string> static_violations_;
};

}  // namespace polyform::harness
