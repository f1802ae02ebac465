#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyform/algebra/polynomial.hpp"
#include "polyform/algebra/primes.hpp"
#include "polyform/errors.hpp"

namespace polyform {

using GateId = std::uint32_t;

enum class GateKind : std::uint8_t { Input, Const, Add, Mul };

struct Gate {
  GateKind kind = GateKind::Const;
  VarIndex var = 0;  // Input
  Integer value;     // Const
  GateId lhs = 0;    // Add / Mul
  GateId rhs = 0;

  static Gate input(VarIndex v) { return Gate{GateKind::Input, v, {}, 0, 0}; }
  static Gate constant(Integer c) { return Gate{GateKind::Const, 0, std::move(c), 0, 0}; }
  static Gate add(GateId a, GateId b) { return Gate{GateKind::Add, 0, {}, a, b}; }
  static Gate mul(GateId a, GateId b) { return Gate{GateKind::Mul, 0, {}, a, b}; }

  [[nodiscard]] bool is_binary() const { return kind == GateKind::Add || kind == GateKind::Mul; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Fan-in-2 arithmetic circuit. Gates are stored in topological order: every operand id is
/// strictly smaller than the gate's own id. Constants are kept reduced when a modulus is set.
class ArithmeticCircuit {
 public:
  ArithmeticCircuit() = default;

  ArithmeticCircuit(std::size_t nvars, std::optional<PrimeModulus> modulus, std::vector<Gate> gates,
                    std::vector<GateId> outputs)
      : nvars_(nvars), modulus_(modulus), gates_(std::move(gates)), outputs_(std::move(outputs)) {
    validate();
  }

  [[nodiscard]] std::size_t nvars() const { return nvars_; }
  [[nodiscard]] const std::optional<PrimeModulus>& modulus() const { return modulus_; }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
  [[nodiscard]] const Gate& gate(GateId g) const { return gates_.at(g); }
  [[nodiscard]] const std::vector<GateId>& outputs() const { return outputs_; }
  [[nodiscard]] std::size_t gate_count() const { return gates_.size(); }

  /// Number of edges: two per Add/Mul gate.
  [[nodiscard]] std::size_t size() const {
    std::size_t s = 0;
    for (const Gate& g : gates_) s += g.is_binary() ? 2 : 0;
    return s;
  }

  [[nodiscard]] GateId single_output() const {
    if (outputs_.size() != 1) {
      throw ContractError("expected a single-output circuit, got " + std::to_string(outputs_.size()) + " outputs");
    }
    return outputs_.front();
  }

  friend bool operator==(const ArithmeticCircuit&, const ArithmeticCircuit&) = default;

 private:
  void validate() {
    if (outputs_.empty()) throw ContractError("circuit has no outputs");
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      Gate& g = gates_[i];
      switch (g.kind) {
        case GateKind::Input:
          if (g.var >= nvars_) {
            throw ArityError("gate " + std::to_string(i) + " reads variable " + std::to_string(g.var) +
                             " but nvars=" + std::to_string(nvars_));
          }
          break;
        case GateKind::Const:
          if (modulus_) g.value = normalize_mod(g.value, modulus_->p);
          break;
        case GateKind::Add:
        case GateKind::Mul:
          if (g.lhs >= i || g.rhs >= i) {
            throw ContractError("gate " + std::to_string(i) + " references a later or equal gate");
          }
          break;
      }
    }
    for (GateId o : outputs_) {
      if (o >= gates_.size()) throw ContractError("output gate " + std::to_string(o) + " does not exist");
    }
  }

  std::size_t nvars_ = 0;
  std::optional<PrimeModulus> modulus_;
  std::vector<Gate> gates_;
  std::vector<GateId> outputs_;
};

/// Incremental construction helper; ids are handed out in topological order.
class CircuitBuilder {
 public:
  CircuitBuilder(std::size_t nvars, std::optional<PrimeModulus> modulus) : nvars_(nvars), modulus_(modulus) {}

  GateId push(Gate g) {
    gates_.push_back(std::move(g));
    return static_cast<GateId>(gates_.size() - 1);
  }
  GateId input(VarIndex v) { return push(Gate::input(v)); }
  GateId constant(Integer c) { return push(Gate::constant(std::move(c))); }
  GateId add(GateId a, GateId b) { return push(Gate::add(a, b)); }
  GateId mul(GateId a, GateId b) { return push(Gate::mul(a, b)); }

  /// Balanced sum of the given gates (requires at least one).
  GateId sum_balanced(std::vector<GateId> ids) {
    if (ids.empty()) throw ContractError("empty sum");
    while (ids.size() > 1) {
      std::vector<GateId> next;
      for (std::size_t i = 0; i + 1 < ids.size(); i += 2) next.push_back(add(ids[i], ids[i + 1]));
      if (ids.size() % 2) next.push_back(ids.back());
      ids = std::move(next);
    }
    return ids.front();
  }

  [[nodiscard]] std::size_t gate_count() const { return gates_.size(); }

  ArithmeticCircuit build(std::vector<GateId> outputs) && {
    return ArithmeticCircuit(nvars_, modulus_, std::move(gates_), std::move(outputs));
  }

 private:
  std::size_t nvars_;
  std::optional<PrimeModulus> modulus_;
  std::vector<Gate> gates_;
};

/// Gates reachable from the outputs.
inline std::vector<bool> live_gates(const ArithmeticCircuit& c) {
  std::vector<bool> live(c.gate_count(), false);
  for (GateId o : c.outputs()) live[o] = true;
  for (std::size_t i = c.gate_count(); i-- > 0;) {
    if (!live[i]) continue;
    const Gate& g = c.gates()[i];
    if (g.is_binary()) {
      live[g.lhs] = true;
      live[g.rhs] = true;
    }
  }
  return live;
}

/// Result of dead-code elimination: the pruned circuit and old id -> new id (absent when removed).
struct PrunedCircuit {
  ArithmeticCircuit circuit;
  std::vector<std::optional<GateId>> remap;
};

inline PrunedCircuit eliminate_dead_gates(const ArithmeticCircuit& c) {
  const auto live = live_gates(c);
  std::vector<std::optional<GateId>> remap(c.gate_count());
  std::vector<Gate> gates;
  for (std::size_t i = 0; i < c.gate_count(); ++i) {
    if (!live[i]) continue;
    Gate g = c.gates()[i];
    if (g.is_binary()) {
      g.lhs = *remap[g.lhs];
      g.rhs = *remap[g.rhs];
    }
    remap[i] = static_cast<GateId>(gates.size());
    gates.push_back(std::move(g));
  }
  std::vector<GateId> outputs;
  for (GateId o : c.outputs()) outputs.push_back(*remap[o]);
  return {ArithmeticCircuit(c.nvars(), c.modulus(), std::move(gates), std::move(outputs)), std::move(remap)};
}

/// Syntactic degree of every gate (inputs 1, constants 0, add max, mul sum), saturating.
inline std::vector<std::uint32_t> formal_degrees(const ArithmeticCircuit& c) {
  constexpr std::uint64_t kCap = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> deg(c.gate_count(), 0);
  for (std::size_t i = 0; i < c.gate_count(); ++i) {
    const Gate& g = c.gates()[i];
    switch (g.kind) {
      case GateKind::Input: deg[i] = 1; break;
      case GateKind::Const: deg[i] = 0; break;
      case GateKind::Add: deg[i] = std::max(deg[g.lhs], deg[g.rhs]); break;
      case GateKind::Mul:
        deg[i] = static_cast<std::uint32_t>(std::min<std::uint64_t>(kCap, std::uint64_t{deg[g.lhs]} + deg[g.rhs]));
        break;
    }
  }
  return deg;
}

inline std::uint32_t formal_degree(const ArithmeticCircuit& c) {
  const auto deg = formal_degrees(c);
  std::uint32_t d = 0;
  for (GateId o : c.outputs()) d = std::max(d, deg[o]);
  return d;
}

namespace detail {

inline void require_point_arity(const ArithmeticCircuit& c, std::size_t n) {
  if (n != c.nvars()) {
    throw ArityError("point has " + std::to_string(n) + " entries, circuit has " + std::to_string(c.nvars()) +
                     " variables");
  }
}

}  // namespace detail

/// Evaluates every output mod p using machine words. `point` holds residues in [0, p).
inline std::vector<std::uint64_t> evaluate_mod(const ArithmeticCircuit& c, std::span<const std::uint64_t> point) {
  if (!c.modulus()) throw ContractError("evaluate_mod needs a circuit with a modulus");
  detail::require_point_arity(c, point.size());
  const std::uint64_t p = c.modulus()->p;
  std::vector<std::uint64_t> val(c.gate_count());
  for (std::size_t i = 0; i < c.gate_count(); ++i) {
    const Gate& g = c.gates()[i];
    switch (g.kind) {
      case GateKind::Input: val[i] = point[g.var] % p; break;
      case GateKind::Const: val[i] = static_cast<std::uint64_t>(g.value); break;
      case GateKind::Add: {
        const std::uint64_t s = val[g.lhs] + val[g.rhs];
        val[i] = (s < val[g.lhs] || s >= p) ? s - p : s;
        break;
      }
      case GateKind::Mul: val[i] = detail::mul_mod(val[g.lhs], val[g.rhs], p); break;
    }
  }
  std::vector<std::uint64_t> out;
  out.reserve(c.outputs().size());
  for (GateId o : c.outputs()) out.push_back(val[o]);
  return out;
}

/// One value per output: residues in [0, p) when the circuit has a modulus, exact integers otherwise.
inline std::vector<Integer> evaluate(const ArithmeticCircuit& c, std::span<const Integer> point) {
  detail::require_point_arity(c, point.size());
  if (c.modulus()) {
    std::vector<std::uint64_t> residues(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
      residues[i] = static_cast<std::uint64_t>(normalize_mod(point[i], c.modulus()->p));
    }
    auto r = evaluate_mod(c, residues);
    return {r.begin(), r.end()};
  }
  std::vector<Integer> val(c.gate_count());
  for (std::size_t i = 0; i < c.gate_count(); ++i) {
    const Gate& g = c.gates()[i];
    switch (g.kind) {
      case GateKind::Input: val[i] = point[g.var]; break;
      case GateKind::Const: val[i] = g.value; break;
      case GateKind::Add: val[i] = val[g.lhs] + val[g.rhs]; break;
      case GateKind::Mul: val[i] = val[g.lhs] * val[g.rhs]; break;
    }
  }
  std::vector<Integer> out;
  for (GateId o : c.outputs()) out.push_back(val[o]);
  return out;
}

inline std::vector<Integer> evaluate(const ArithmeticCircuit& c, std::span<const std::int64_t> point) {
  std::vector<Integer> big(point.begin(), point.end());
  return evaluate(c, std::span<const Integer>(big));
}

}  // namespace polyform
