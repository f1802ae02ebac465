#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polyform/circuits/circuit.hpp"

namespace polyform {

/// A circuit whose every gate computes a homogeneous polynomial of degree degree_of[gate].
/// component_outputs[d] computes the degree-d part of the source circuit's output.
struct HomogeneousCircuit {
  ArithmeticCircuit base;
  std::vector<std::uint32_t> degree_of;
  std::vector<GateId> component_outputs;
  std::uint32_t delta = 0;
};

namespace detail {

struct ComponentBuild {
  CircuitBuilder builder;
  std::vector<std::uint32_t> degree;
  std::vector<std::optional<GateId>> output_components;  // Delta+1 entries; nullopt = identically zero
};

// Splits each live gate into degree components 0..delta. Components that are zero by
// construction are never materialized.
inline ComponentBuild split_components(const ArithmeticCircuit& c, std::uint32_t delta) {
  const GateId out = c.single_output();
  const auto live = live_gates(c);
  ComponentBuild cb{CircuitBuilder(c.nvars(), c.modulus()), {}, {}};
  auto emit = [&](Gate g, std::uint32_t d) {
    cb.degree.push_back(d);
    return cb.builder.push(std::move(g));
  };

  using Components = std::vector<std::optional<GateId>>;
  std::vector<Components> comp(c.gate_count());
  for (std::size_t i = 0; i < c.gate_count(); ++i) {
    if (!live[i]) continue;
    const Gate& g = c.gates()[i];
    Components cur(delta + 1);
    switch (g.kind) {
      case GateKind::Const:
        if (g.value != 0) cur[0] = emit(Gate::constant(g.value), 0);
        break;
      case GateKind::Input:
        if (delta >= 1) cur[1] = emit(Gate::input(g.var), 1);
        break;
      case GateKind::Add: {
        const Components& a = comp[g.lhs];
        const Components& b = comp[g.rhs];
        for (std::uint32_t d = 0; d <= delta; ++d) {
          if (a[d] && b[d]) {
            cur[d] = emit(Gate::add(*a[d], *b[d]), d);
          } else {
            cur[d] = a[d] ? a[d] : b[d];
          }
        }
        break;
      }
      case GateKind::Mul: {
        const Components& a = comp[g.lhs];
        const Components& b = comp[g.rhs];
        for (std::uint32_t d = 0; d <= delta; ++d) {
          std::optional<GateId> acc;
          for (std::uint32_t k = 0; k <= d; ++k) {
            if (!a[k] || !b[d - k]) continue;
            const GateId prod = emit(Gate::mul(*a[k], *b[d - k]), d);
            acc = acc ? emit(Gate::add(*acc, prod), d) : prod;
          }
          cur[d] = acc;
        }
        break;
      }
    }
    comp[i] = std::move(cur);
  }
  cb.output_components = comp[out];
  return cb;
}

}  // namespace detail

/// Strassen-style homogenization up to degree delta. Components above delta are dropped.
inline HomogeneousCircuit homogenize(const ArithmeticCircuit& c, std::uint32_t delta) {
  auto cb = detail::split_components(c, delta);
  std::vector<GateId> outputs;
  for (std::uint32_t d = 0; d <= delta; ++d) {
    if (cb.output_components[d]) {
      outputs.push_back(*cb.output_components[d]);
    } else {
      cb.degree.push_back(d);
      outputs.push_back(cb.builder.constant(0));
    }
  }
  auto built = std::move(cb.builder).build(outputs);
  auto pruned = eliminate_dead_gates(built);

  HomogeneousCircuit h;
  h.delta = delta;
  h.degree_of.resize(pruned.circuit.gate_count());
  for (std::size_t i = 0; i < pruned.remap.size(); ++i) {
    if (pruned.remap[i]) h.degree_of[*pruned.remap[i]] = cb.degree[i];
  }
  h.component_outputs = pruned.circuit.outputs();
  h.base = std::move(pruned.circuit);

  const std::size_t bound = 9 * std::size_t{delta + 1} * (delta + 1) * c.size();
  if (h.base.size() > bound) throw std::logic_error("homogenization exceeded its size bound");
  return h;
}

/// Single-output circuit computing the degree <= delta part of c, every gate of degree <= delta.
inline ArithmeticCircuit truncate_to_degree(const ArithmeticCircuit& c, std::uint32_t delta) {
  auto cb = detail::split_components(c, delta);
  std::optional<GateId> acc;
  for (std::uint32_t d = 0; d <= delta; ++d) {
    if (!cb.output_components[d]) continue;
    acc = acc ? cb.builder.add(*acc, *cb.output_components[d]) : *cb.output_components[d];
  }
  if (!acc) acc = cb.builder.constant(0);
  return eliminate_dead_gates(std::move(cb.builder).build({*acc})).circuit;
}

}  // namespace polyform
