#pragma once

#include <istream>
#include <variant>

#include "polyform/formulations/classic.hpp"
#include "polyform/formulations/parameterized.hpp"

namespace polyform {

using Instance = std::variant<Graph, CnfFormula, SetFamily, Hypergraph3>;

enum class InstanceFormat { Graph, Cnf, Family, Hyper3 };

inline InstanceFormat instance_format(Problem p) {
  switch (p) {
    case Problem::MaxKSat:
    case Problem::KSat:
      return InstanceFormat::Cnf;
    case Problem::SetCover:
    case Problem::KSetSplitting:
      return InstanceFormat::Family;
    case Problem::Matching3d:
      return InstanceFormat::Hyper3;
    default:
      return InstanceFormat::Graph;
  }
}

inline Instance read_instance(Problem p, std::istream& in) {
  switch (instance_format(p)) {
    case InstanceFormat::Cnf:
      return read_dimacs(in);
    case InstanceFormat::Family:
      return read_family(in);
    case InstanceFormat::Hyper3:
      return read_hyper3(in);
    case InstanceFormat::Graph:
      break;
  }
  return read_graph(in);
}

/// Fills size parameters that the instance determines (n, m, and k for Steiner terminals) when
/// they were not given explicitly. A Steiner weight cap defaults to the budget t.
inline Params complete_params(Params p, const Instance& x) {
  auto fill = [](std::optional<std::uint32_t>& field, std::uint32_t value) {
    if (!field) field = value;
  };
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, Graph>) {
          fill(p.n, inst.n());
          if (p.problem == Problem::KSteinerTree) {
            fill(p.k, static_cast<std::uint32_t>(std::popcount(inst.terminals)));
            if (p.t) fill(p.w, *p.t);
          }
        } else if constexpr (std::is_same_v<T, CnfFormula>) {
          fill(p.n, inst.n);
          fill(p.m, static_cast<std::uint32_t>(inst.clauses.size()));
          fill(p.k, std::max<std::uint32_t>(1, inst.width()));
        } else if constexpr (std::is_same_v<T, SetFamily>) {
          fill(p.n, inst.n);
          fill(p.m, static_cast<std::uint32_t>(inst.sets.size()));
        } else {
          fill(p.n, inst.n);
        }
      },
      x);
  return p;
}

inline Formulation formulate(const Params& p) {
  switch (p.problem) {
    case Problem::HamPath:
      return formulate_ham_path(p);
    case Problem::IndependentSet:
    case Problem::Clique:
    case Problem::VertexCover:
      return formulate_independent_set(p);
    case Problem::MaxKSat:
    case Problem::KSat:
      return formulate_max_ksat(p);
    case Problem::GraphColoring:
      return formulate_graph_coloring(p);
    case Problem::SetCover:
      return formulate_set_cover(p);
    case Problem::Matching3d:
      return formulate_3d_matching(p);
    case Problem::KVertexCover:
      return formulate_k_vertex_cover(p);
    case Problem::KSetSplitting:
      return formulate_k_set_splitting(p);
    case Problem::KSteinerTree:
      return formulate_k_steiner_tree(p);
    case Problem::KInternalSpanningTree:
    case Problem::KLeafSpanningTree:
      return formulate_k_spanning_tree(p);
    case Problem::KNonblocker:
      return formulate_k_nonblocker(p);
    case Problem::KPath:
      return formulate_k_path(p);
  }
  throw std::logic_error("unknown problem");
}

namespace detail {

template <typename T>
const T& instance_as(const Instance& x, Problem p) {
  if (const T* v = std::get_if<T>(&x)) return *v;
  throw ParameterError(std::string("wrong instance type for ") + std::string(problem_tag(p)));
}

}  // namespace detail

/// phi(x): the 0/1 value of every legend variable on instance x. Steiner instances take their
/// weight budget from the formulation's t parameter.
inline Assignment assign(const Formulation& f, const Instance& x) {
  const Problem p = f.params.problem;
  switch (p) {
    case Problem::HamPath:
      return assign_ham_path(f, detail::instance_as<Graph>(x, p));
    case Problem::IndependentSet:
    case Problem::Clique:
    case Problem::VertexCover:
      return assign_independent_set(f, detail::instance_as<Graph>(x, p));
    case Problem::MaxKSat:
    case Problem::KSat:
      return assign_max_ksat(f, detail::instance_as<CnfFormula>(x, p));
    case Problem::GraphColoring:
      return assign_graph_coloring(f, detail::instance_as<Graph>(x, p));
    case Problem::SetCover:
      return assign_set_cover(f, detail::instance_as<SetFamily>(x, p));
    case Problem::Matching3d:
      return assign_3d_matching(f, detail::instance_as<Hypergraph3>(x, p));
    case Problem::KVertexCover:
      return assign_k_vertex_cover(f, detail::instance_as<Graph>(x, p));
    case Problem::KSetSplitting:
      return assign_k_set_splitting(f, detail::instance_as<SetFamily>(x, p));
    case Problem::KSteinerTree:
      return assign_k_steiner_tree(f, detail::instance_as<Graph>(x, p));
    case Problem::KInternalSpanningTree:
    case Problem::KLeafSpanningTree:
      return assign_k_spanning_tree(f, detail::instance_as<Graph>(x, p));
    case Problem::KNonblocker:
      return assign_k_nonblocker(f, detail::instance_as<Graph>(x, p));
    case Problem::KPath:
      return assign_k_path(f, detail::instance_as<Graph>(x, p));
  }
  throw std::logic_error("unknown problem");
}

}  // namespace polyform
