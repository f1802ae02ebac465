#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyform/algebra/polynomial.hpp"
#include "polyform/circuits/circuit.hpp"

namespace polyform {

/// Gate-by-gate symbolic expansion over Z_p, discarding monomials of degree > delta.
/// Returns one polynomial per output (degree bound delta).
inline std::vector<SparsePolynomial> expand(const ArithmeticCircuit& c, std::uint32_t delta) {
  if (!c.modulus()) throw ContractError("expansion is defined over Z_p; circuit has no modulus");
  const auto& mod = c.modulus();
  const std::size_t n = c.nvars();
  const auto live = live_gates(c);

  // Release intermediate polynomials after their last reader.
  std::vector<std::size_t> last_use(c.gate_count(), 0);
  for (std::size_t i = 0; i < c.gate_count(); ++i) {
    const Gate& g = c.gates()[i];
    if (live[i] && g.is_binary()) last_use[g.lhs] = last_use[g.rhs] = i;
  }
  for (GateId o : c.outputs()) last_use[o] = c.gate_count();

  std::vector<std::optional<SparsePolynomial>> poly(c.gate_count());
  for (std::size_t i = 0; i < c.gate_count(); ++i) {
    if (!live[i]) continue;
    const Gate& g = c.gates()[i];
    switch (g.kind) {
      case GateKind::Input:
        poly[i] = delta >= 1 ? SparsePolynomial::variable(n, mod, g.var) : SparsePolynomial(n, mod);
        break;
      case GateKind::Const: poly[i] = SparsePolynomial::constant(n, mod, g.value); break;
      case GateKind::Add: poly[i] = poly_add(*poly[g.lhs], *poly[g.rhs]); break;
      case GateKind::Mul: poly[i] = poly_mul_truncated(*poly[g.lhs], *poly[g.rhs], delta); break;
    }
    if (g.is_binary()) {
      if (last_use[g.lhs] == i) poly[g.lhs].reset();
      if (last_use[g.rhs] == i) poly[g.rhs].reset();
    }
  }
  std::vector<SparsePolynomial> out;
  for (GateId o : c.outputs()) out.push_back(poly[o]->with_degree_bound(delta));
  return out;
}

struct VerifyResult {
  bool accepted = false;
  std::optional<Monomial> witness;  // graded-lex smallest differing monomial on reject
  Integer circuit_coefficient;
  Integer target_coefficient;

  explicit operator bool() const { return accepted; }
};

/// Deterministic identity check of a candidate circuit against target over Z_p.
///
/// When the circuit's formal degree exceeds delta the expansion is carried out to the formal
/// degree instead, so monomials above delta are compared too and a circuit whose high-degree part
/// is nonzero is rejected.
inline VerifyResult verify_circuit(const ArithmeticCircuit& c, const SparsePolynomial& target, std::uint32_t delta,
                                   const PrimeModulus& p) {
  constexpr std::uint32_t kMaxExactDegree = 256;
  if (!c.modulus() || c.modulus()->p != p.p) throw IncompatibleRingError("candidate circuit is not over Z_p");
  if (!target.modulus() || target.modulus()->p != p.p) throw IncompatibleRingError("target is not over Z_p");
  if (c.nvars() != target.nvars()) throw IncompatibleRingError("circuit and target variable counts differ");
  if (target.degree() > delta) throw ContractError("target degree exceeds delta");
  const GateId out = c.single_output();

  std::uint32_t cap = delta;
  const auto deg = formal_degrees(c);
  if (deg[out] > delta) {
    if (deg[out] > kMaxExactDegree) {
      throw ContractError("candidate formal degree " + std::to_string(deg[out]) + " too large to expand");
    }
    cap = deg[out];
  }
  const SparsePolynomial got = expand(c, cap).front();

  const auto& a = got.terms();
  const auto& b = target.terms();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    VerifyResult r;
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.witness = a[i].first;
      r.circuit_coefficient = a[i].second;
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.witness = b[j].first;
      r.target_coefficient = b[j].second;
    } else if (a[i].second != b[j].second) {
      r.witness = a[i].first;
      r.circuit_coefficient = a[i].second;
      r.target_coefficient = b[j].second;
    } else {
      ++i;
      ++j;
      continue;
    }
    return r;
  }
  return VerifyResult{true, std::nullopt, 0, 0};
}

/// Canonical witness circuit for P: one shared input gate per variable, a Mul chain per monomial
/// (led by its coefficient when that is not 1) and a balanced Add tree.
inline ArithmeticCircuit sum_of_products_circuit(const SparsePolynomial& poly) {
  CircuitBuilder b(poly.nvars(), poly.modulus());
  if (poly.is_zero()) {
    const GateId z = b.constant(0);
    return std::move(b).build({z});
  }
  std::map<VarIndex, GateId> inputs;
  for (const auto& [mono, coeff] : poly.terms()) {
    for (const Power& pw : mono.powers()) {
      if (!inputs.contains(pw.var)) inputs[pw.var] = b.input(pw.var);
    }
  }
  std::vector<GateId> summands;
  summands.reserve(poly.size());
  for (const auto& [mono, coeff] : poly.terms()) {
    std::optional<GateId> acc;
    if (coeff != 1 || mono.is_constant()) acc = b.constant(coeff);
    for (const Power& pw : mono.powers()) {
      for (std::uint32_t e = 0; e < pw.exp; ++e) {
        const GateId x = inputs.at(pw.var);
        acc = acc ? b.mul(*acc, x) : x;
      }
    }
    summands.push_back(*acc);
  }
  const GateId root = b.sum_balanced(std::move(summands));
  return std::move(b).build({root});
}

}  // namespace polyform
