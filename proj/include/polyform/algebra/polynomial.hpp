#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polyform/algebra/monomial.hpp"
#include "polyform/algebra/primes.hpp"
#include "polyform/errors.hpp"

namespace polyform {

using Integer = boost::multiprecision::cpp_int;

/// Residue of v in [0, p).
inline Integer normalize_mod(const Integer& v, std::uint64_t p) {
  Integer r = v % p;
  if (r < 0) r += p;
  return r;
}

/// Sparse multivariate polynomial over Z, or over Z_p when a modulus is attached.
///
/// Terms are kept sorted by graded-lex monomial order with no zero coefficients, so two
/// polynomials are equal exactly when their term vectors are equal. Residues are stored in [0, p).
class SparsePolynomial {
 public:
  using Term = std::pair<Monomial, Integer>;

  SparsePolynomial() = default;

  SparsePolynomial(std::size_t nvars, std::optional<PrimeModulus> modulus, std::uint32_t degree_bound = 0)
      : nvars_(nvars), modulus_(modulus), degree_bound_(degree_bound) {}

  /// Builds a canonical polynomial from arbitrary terms: repeated monomials are summed, zero
  /// coefficients dropped and residues reduced. When degree_bound is absent it is set to the actual
  /// degree; when present every monomial must respect it.
  static SparsePolynomial from_terms(std::size_t nvars, std::optional<PrimeModulus> modulus,
                                     std::vector<Term> terms,
                                     std::optional<std::uint32_t> degree_bound = std::nullopt) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    SparsePolynomial out(nvars, modulus, 0);
    out.terms_.reserve(terms.size());
    for (auto& [mono, coeff] : terms) {
      if (mono.span_end() > nvars) {
        throw ArityError("monomial references variable " + std::to_string(mono.span_end() - 1) +
                         " but nvars=" + std::to_string(nvars));
      }
      if (!out.terms_.empty() && out.terms_.back().first == mono) {
        out.terms_.back().second += coeff;
      } else {
        out.terms_.emplace_back(std::move(mono), std::move(coeff));
      }
    }
    out.normalize();
    const std::uint32_t actual = out.degree();
    if (degree_bound) {
      if (actual > *degree_bound) {
        throw ParameterError("monomial of degree " + std::to_string(actual) +
                             " exceeds degree bound " + std::to_string(*degree_bound));
      }
      out.degree_bound_ = *degree_bound;
    } else {
      out.degree_bound_ = actual;
    }
    return out;
  }

  /// Adopts terms that are already canonical (sorted, unique, nonzero, reduced). Used by the
  /// arithmetic kernels below, which produce canonical output by construction.
  static SparsePolynomial from_canonical(std::size_t nvars, std::optional<PrimeModulus> modulus,
                                         std::uint32_t degree_bound, std::vector<Term> terms) {
    SparsePolynomial out(nvars, modulus, degree_bound);
    out.terms_ = std::move(terms);
    return out;
  }

  static SparsePolynomial constant(std::size_t nvars, std::optional<PrimeModulus> modulus, Integer c) {
    std::vector<Term> t;
    t.emplace_back(Monomial{}, std::move(c));
    return from_terms(nvars, modulus, std::move(t), 0);
  }

  static SparsePolynomial variable(std::size_t nvars, std::optional<PrimeModulus> modulus, VarIndex v) {
    std::vector<Term> t;
    t.emplace_back(Monomial::variable(v), Integer{1});
    return from_terms(nvars, modulus, std::move(t), 1);
  }

  [[nodiscard]] std::size_t nvars() const { return nvars_; }
  [[nodiscard]] const std::optional<PrimeModulus>& modulus() const { return modulus_; }
  [[nodiscard]] std::uint32_t degree_bound() const { return degree_bound_; }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  /// Actual total degree (0 for the zero polynomial).
  [[nodiscard]] std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
  }

  /// Coefficient of m (zero when absent).
  [[nodiscard]] Integer coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.first < key; });
    if (it != terms_.end() && it->first == m) return it->second;
    return 0;
  }

  /// Terms of exactly degree d.
  [[nodiscard]] SparsePolynomial homogeneous_part(std::uint32_t d) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.first.degree() == d) out.push_back(t);
    }
    return from_canonical(nvars_, modulus_, degree_bound_, std::move(out));
  }

  /// Terms of degree at most d.
  [[nodiscard]] SparsePolynomial truncated(std::uint32_t d) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.first.degree() <= d) out.push_back(t);
    }
    return from_canonical(nvars_, modulus_, std::min(degree_bound_, d), std::move(out));
  }

  /// Same polynomial with a larger advertised degree bound.
  [[nodiscard]] SparsePolynomial with_degree_bound(std::uint32_t bound) const {
    if (degree() > bound) throw ParameterError("degree bound below actual degree");
    SparsePolynomial out = *this;
    out.degree_bound_ = bound;
    return out;
  }

  /// Structural equality: same ring and same terms. The degree bound is metadata and not compared.
  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
    return a.nvars_ == b.nvars_ && a.modulus_ == b.modulus_ && a.terms_ == b.terms_;
  }

 private:
  void normalize() {
    std::vector<Term> kept;
    kept.reserve(terms_.size());
    for (auto& t : terms_) {
      if (modulus_) t.second = normalize_mod(t.second, modulus_->p);
      if (t.second != 0) kept.push_back(std::move(t));
    }
    terms_ = std::move(kept);
  }

  std::size_t nvars_ = 0;
  std::optional<PrimeModulus> modulus_;
  std::uint32_t degree_bound_ = 0;
  std::vector<Term> terms_;
};

namespace detail {

inline void require_same_ring(const SparsePolynomial& a, const SparsePolynomial& b) {
  if (a.nvars() != b.nvars()) {
    throw IncompatibleRingError("variable counts differ: " + std::to_string(a.nvars()) + " vs " +
                                std::to_string(b.nvars()));
  }
  if (a.modulus().has_value() != b.modulus().has_value() ||
      (a.modulus() && a.modulus()->p != b.modulus()->p)) {
    throw IncompatibleRingError("coefficient rings differ");
  }
}

}  // namespace detail

/// Coefficient-wise sum. Degree bound is the larger of the two inputs.
inline SparsePolynomial poly_add(const SparsePolynomial& a, const SparsePolynomial& b) {
  detail::require_same_ring(a, b);
  using Term = SparsePolynomial::Term;
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& mod = a.modulus();
  while (i < ta.size() || j < tb.size()) {
    if (j == tb.size() || (i < ta.size() && ta[i].first < tb[j].first)) {
      out.push_back(ta[i++]);
    } else if (i == ta.size() || tb[j].first < ta[i].first) {
      out.push_back(tb[j++]);
    } else {
      Integer c = ta[i].second + tb[j].second;
      if (mod && c >= mod->p) c -= mod->p;
      if (c != 0) out.emplace_back(ta[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return SparsePolynomial::from_canonical(a.nvars(), mod, std::max(a.degree_bound(), b.degree_bound()),
                                          std::move(out));
}

/// Product with every monomial of degree > max_degree discarded.
inline SparsePolynomial poly_mul_truncated(const SparsePolynomial& a, const SparsePolynomial& b,
                                           std::uint32_t max_degree) {
  detail::require_same_ring(a, b);
  using Term = SparsePolynomial::Term;
  std::vector<Term> raw;
  raw.reserve(a.size() * b.size());
  for (const auto& [ma, ca] : a.terms()) {
    if (ma.degree() > max_degree) continue;
    for (const auto& [mb, cb] : b.terms()) {
      if (ma.degree() + mb.degree() > max_degree) continue;
      raw.emplace_back(ma * mb, ca * cb);
    }
  }
  return SparsePolynomial::from_terms(a.nvars(), a.modulus(), std::move(raw), max_degree);
}

namespace detail {

template <typename Value>
Integer eval_impl(const SparsePolynomial& poly, std::span<const Value> point) {
  if (point.size() != poly.nvars()) {
    throw ArityError("point has " + std::to_string(point.size()) + " entries, polynomial has " +
                     std::to_string(poly.nvars()) + " variables");
  }
  Integer sum = 0;
  for (const auto& [mono, coeff] : poly.terms()) {
    Integer term = coeff;
    bool vanished = false;
    for (const Power& pw : mono.powers()) {
      const Value& x = point[pw.var];
      if (x == 0) {
        vanished = true;
        break;
      }
      if (x == 1) continue;
      for (std::uint32_t e = 0; e < pw.exp; ++e) term *= x;
      if (const auto& m = poly.modulus()) term %= m->p;
    }
    if (vanished) continue;
    sum += term;
    if (const auto& m = poly.modulus()) sum %= m->p;
  }
  if (const auto& m = poly.modulus()) sum = normalize_mod(sum, m->p);
  return sum;
}

}  // namespace detail

/// Exact value of poly at point (reduced into [0, p) when the polynomial carries a modulus).
inline Integer poly_eval(const SparsePolynomial& poly, std::span<const Integer> point) {
  return detail::eval_impl(poly, point);
}

inline Integer poly_eval(const SparsePolynomial& poly, std::span<const std::int64_t> point) {
  return detail::eval_impl(poly, point);
}

/// Reduces every coefficient of an integer polynomial into [0, p).
inline SparsePolynomial reduce_mod(const SparsePolynomial& poly, const PrimeModulus& p) {
  if (poly.modulus()) {
    throw IncompatibleRingError("reduce_mod expects a polynomial over Z");
  }
  std::vector<SparsePolynomial::Term> out;
  out.reserve(poly.size());
  for (const auto& [mono, coeff] : poly.terms()) {
    Integer r = normalize_mod(coeff, p.p);
    if (r != 0) out.emplace_back(mono, std::move(r));
  }
  return SparsePolynomial::from_canonical(poly.nvars(), p, poly.degree_bound(), std::move(out));
}

}  // namespace polyform
