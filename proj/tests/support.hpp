#pragma once

// Test-only helpers: random generators and a naive polynomial representation used as an
// independent oracle (dense exponent vectors in a std::map, no truncation, no canonical order).

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "polyform/algebra.hpp"
#include "polyform/circuits.hpp"

namespace polyform::testing {

using ExpVector = std::vector<std::uint32_t>;
using NaivePoly = std::map<ExpVector, Integer>;

inline void naive_clean(NaivePoly& p, std::optional<std::uint64_t> mod) {
  for (auto it = p.begin(); it != p.end();) {
    if (mod) it->second = normalize_mod(it->second, *mod);
    if (it->second == 0) {
      it = p.erase(it);
    } else {
      ++it;
    }
  }
}

inline NaivePoly naive_add(const NaivePoly& a, const NaivePoly& b, std::optional<std::uint64_t> mod) {
  NaivePoly out = a;
  for (const auto& [e, c] : b) out[e] += c;
  naive_clean(out, mod);
  return out;
}

inline NaivePoly naive_mul(const NaivePoly& a, const NaivePoly& b, std::optional<std::uint64_t> mod) {
  NaivePoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      ExpVector e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  naive_clean(out, mod);
  return out;
}

inline std::uint32_t exp_degree(const ExpVector& e) {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

inline NaivePoly naive_truncate(const NaivePoly& p, std::uint32_t max_degree) {
  NaivePoly out;
  for (const auto& [e, c] : p) {
    if (exp_degree(e) <= max_degree) out[e] = c;
  }
  return out;
}

inline NaivePoly to_naive(const SparsePolynomial& p) {
  NaivePoly out;
  for (const auto& [mono, coeff] : p.terms()) {
    ExpVector e(p.nvars(), 0);
    for (const Power& pw : mono.powers()) e[pw.var] = pw.exp;
    out[e] = coeff;
  }
  return out;
}

inline SparsePolynomial from_naive(const NaivePoly& p, std::size_t nvars, std::optional<PrimeModulus> mod) {
  std::vector<SparsePolynomial::Term> terms;
  for (const auto& [e, c] : p) {
    Monomial::Storage s;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v]) s.push_back(Power{static_cast<VarIndex>(v), e[v]});
    }
    terms.emplace_back(Monomial(std::move(s)), c);
  }
  return SparsePolynomial::from_terms(nvars, mod, std::move(terms));
}

inline Integer naive_eval(const NaivePoly& p, const std::vector<Integer>& x) {
  Integer sum = 0;
  for (const auto& [e, c] : p) {
    Integer t = c;
    for (std::size_t v = 0; v < e.size(); ++v) {
      for (std::uint32_t k = 0; k < e[v]; ++k) t *= x[v];
    }
    sum += t;
  }
  return sum;
}

/// Random polynomial with up to `terms` monomials of degree <= max_degree.
inline SparsePolynomial random_polynomial(std::mt19937_64& rng, std::size_t nvars, std::uint32_t max_degree,
                                          std::size_t terms, std::optional<PrimeModulus> mod = std::nullopt,
                                          std::int64_t coeff_range = 9) {
  std::uniform_int_distribution<std::uint32_t> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
  std::uniform_int_distribution<std::int64_t> coeff(-coeff_range, coeff_range);
  std::vector<SparsePolynomial::Term> out;
  for (std::size_t i = 0; i < terms; ++i) {
    Monomial::Storage s;
    const auto d = deg(rng);
    for (std::uint32_t j = 0; j < d; ++j) s.push_back(Power{static_cast<VarIndex>(var(rng)), 1});
    out.emplace_back(Monomial(std::move(s)), Integer{coeff(rng)});
  }
  return SparsePolynomial::from_terms(nvars, mod, std::move(out));
}


/// Full expansion of every output with no truncation (exact over Z, or reduced mod p).
/// Only meant for tiny circuits.
inline std::vector<NaivePoly> naive_expand(const ArithmeticCircuit& c) {
  std::optional<std::uint64_t> mod;
  if (c.modulus()) mod = c.modulus()->p;
  std::vector<NaivePoly> val(c.gate_count());
  for (std::size_t i = 0; i < c.gate_count(); ++i) {
    const Gate& g = c.gates()[i];
    switch (g.kind) {
      case GateKind::Input: {
        ExpVector e(c.nvars(), 0);
        e[g.var] = 1;
        val[i][e] = 1;
        break;
      }
      case GateKind::Const:
        val[i][ExpVector(c.nvars(), 0)] = g.value;
        naive_clean(val[i], mod);
        break;
      case GateKind::Add: val[i] = naive_add(val[g.lhs], val[g.rhs], mod); break;
      case GateKind::Mul: val[i] = naive_mul(val[g.lhs], val[g.rhs], mod); break;
    }
  }
  std::vector<NaivePoly> out;
  for (GateId o : c.outputs()) out.push_back(val[o]);
  return out;
}

/// Random single-output circuit with at most max_gates gates whose formal degree stays <= max_degree.
inline ArithmeticCircuit random_circuit(std::mt19937_64& rng, std::size_t nvars, std::size_t max_gates,
                                        std::uint32_t max_degree, std::optional<PrimeModulus> mod) {
  std::uniform_int_distribution<std::size_t> gate_count(2, max_gates);
  const std::size_t total = gate_count(rng);
  std::vector<Gate> gates;
  std::vector<std::uint32_t> deg;
  std::uniform_int_distribution<int> coin(0, 9);
  std::uniform_int_distribution<std::int64_t> cval(-3, 5);
  std::uniform_int_distribution<VarIndex> var(0, static_cast<VarIndex>(nvars - 1));
  for (std::size_t i = 0; i < total; ++i) {
    const int r = coin(rng);
    if (i < 2 || r < 2) {
      if (r == 0 && i >= 1) {
        gates.push_back(Gate::constant(cval(rng)));
        deg.push_back(0);
      } else {
        gates.push_back(Gate::input(var(rng)));
        deg.push_back(1);
      }
      continue;
    }
    // Bias operands toward recent gates so circuits are deep rather than flat.
    auto pick = [&] {
      std::uniform_int_distribution<std::size_t> near(i > 4 ? i - 4 : 0, i - 1);
      std::uniform_int_distribution<std::size_t> any(0, i - 1);
      return static_cast<GateId>(coin(rng) < 6 ? near(rng) : any(rng));
    };
    const GateId a = pick();
    const GateId b = pick();
    if (r < 6 && deg[a] + deg[b] <= max_degree) {
      gates.push_back(Gate::mul(a, b));
      deg.push_back(deg[a] + deg[b]);
    } else {
      gates.push_back(Gate::add(a, b));
      deg.push_back(std::max(deg[a], deg[b]));
    }
  }
  const auto last = static_cast<GateId>(gates.size() - 1);
  return ArithmeticCircuit(nvars, mod, std::move(gates), {last});
}

inline SparsePolynomial naive_expand_poly(const ArithmeticCircuit& c) {
  return from_naive(naive_expand(c).front(), c.nvars(), c.modulus());
}

}  // namespace polyform::testing
