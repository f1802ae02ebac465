#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "polyform/algebra/polynomial.hpp"
#include "polyform/errors.hpp"
#include "polyform/solvers/instances.hpp"

namespace polyform {

inline constexpr std::uint32_t kDpMaxNodes = 24;

/// End nodes w such that G[S] has a Hamiltonian path from u to w (bitmask). Empty when u not in S.
inline NodeSet ham_path_ends(const Graph& g, NodeSet s, std::uint32_t u) {
  if (!contains(s, u)) return 0;
  const auto nodes = members_of(s);
  const auto k = static_cast<std::uint32_t>(nodes.size());
  if (k > kDpMaxNodes) throw ParameterError("ham_segment: |S| exceeds the desk-scale cap");
  // Re-index S to 0..k-1; reach[mask] = set of local end nodes of paths from u covering mask.
  std::vector<std::uint32_t> local_adj(k, 0);
  std::uint32_t start = 0;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (nodes[i] == u) start = i;
    for (std::uint32_t j = 0; j < k; ++j) {
      if (g.has_edge(nodes[i], nodes[j])) local_adj[i] |= 1U << j;
    }
  }
  std::vector<std::uint32_t> reach(std::size_t{1} << k, 0);
  reach[1U << start] = 1U << start;
  for (std::uint32_t mask = 1; mask < (1U << k); ++mask) {
    for (std::uint32_t ends = reach[mask]; ends; ends &= ends - 1) {
      const auto w = static_cast<std::uint32_t>(std::countr_zero(ends));
      for (std::uint32_t nxt = local_adj[w] & ~mask; nxt; nxt &= nxt - 1) {
        const auto x = static_cast<std::uint32_t>(std::countr_zero(nxt));
        reach[mask | (1U << x)] |= 1U << x;
      }
    }
  }
  NodeSet out = 0;
  for (std::uint32_t ends = reach[(1U << k) - 1]; ends; ends &= ends - 1) out |= bit(nodes[std::countr_zero(ends)]);
  return out;
}

/// [G[S] has a Hamiltonian path starting at u whose last node has an edge to v]; v = nullopt
/// drops the end condition.
inline bool ham_segment(const Graph& g, NodeSet s, std::uint32_t u, std::optional<std::uint32_t> v) {
  const NodeSet ends = ham_path_ends(g, s, u);
  if (!v) return ends != 0;
  return (ends & g.in(*v)) != 0;
}

/// Held-Karp over all start nodes.
inline bool hamiltonian_path(const Graph& g) {
  const std::uint32_t n = g.n();
  if (n == 0) return true;
  if (n > kDpMaxNodes) throw ParameterError("hamiltonian_path: n exceeds the desk-scale cap");
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  for (std::uint32_t v = 0; v < n; ++v) reach[1U << v] = 1U << v;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    for (std::uint32_t ends = reach[mask]; ends; ends &= ends - 1) {
      const auto w = static_cast<std::uint32_t>(std::countr_zero(ends));
      for (auto nxt = static_cast<std::uint32_t>(g.out(w)) & ~mask; nxt; nxt &= nxt - 1) {
        const auto x = static_cast<std::uint32_t>(std::countr_zero(nxt));
        reach[mask | (1U << x)] |= 1U << x;
      }
    }
  }
  return reach[(1U << n) - 1] != 0;
}

/// Directed Hamiltonian cycle (n >= 2; a single node counts as a cycle only with n == 1).
inline bool hamiltonian_cycle(const Graph& g) {
  const std::uint32_t n = g.n();
  if (n <= 1) return n == 1;
  const NodeSet ends = ham_path_ends(g, full_set(n), 0);
  return (ends & g.in(0)) != 0;
}

inline bool is_independent(const Graph& g, NodeSet s) {
  for (auto v : members_of(s)) {
    if (g.out(v) & s) return false;
  }
  return true;
}

/// Branching on the lowest vertex: either drop it or take it and drop its neighbours.
inline std::uint32_t max_independent_set(const Graph& g, NodeSet allowed) {
  if (!allowed) return 0;
  const auto v = static_cast<std::uint32_t>(std::countr_zero(allowed));
  const NodeSet rest = allowed & ~bit(v);
  const std::uint32_t take = 1 + max_independent_set(g, rest & ~g.out(v));
  if ((g.out(v) & rest) == 0) return take;  // isolated in the remaining graph: taking is optimal
  return std::max(take, max_independent_set(g, rest));
}

inline std::uint32_t max_independent_set(const Graph& g) { return max_independent_set(g, full_set(g.n())); }

/// Chromatic number of G[S] by inclusion-exclusion: chi <= r iff
/// sum_{X subset S} (-1)^{|S \ X|} i(X)^r > 0, with i(X) the number of independent subsets of X.
inline std::uint32_t chromatic_number(const Graph& g, NodeSet s) {
  if (!s) return 0;
  const auto nodes = members_of(s);
  const auto k = static_cast<std::uint32_t>(nodes.size());
  if (k > kDpMaxNodes) throw ParameterError("chromatic_number: |S| exceeds the desk-scale cap");
  std::vector<std::uint32_t> adj(k, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t j = 0; j < k; ++j) {
      if (g.has_edge(nodes[i], nodes[j])) adj[i] |= 1U << j;
    }
  }
  // i(X) = i(X - v) + i(X - N[v]) for v the lowest element of X.
  std::vector<std::uint64_t> indep(std::size_t{1} << k);
  indep[0] = 1;
  for (std::uint32_t x = 1; x < (1U << k); ++x) {
    const auto v = static_cast<std::uint32_t>(std::countr_zero(x));
    indep[x] = indep[x & ~(1U << v)] + indep[x & ~(1U << v) & ~adj[v]];
  }
  for (std::uint32_t r = 1; r <= k; ++r) {
    Integer total = 0;
    for (std::uint32_t x = 0; x < (1U << k); ++x) {
      Integer term = boost::multiprecision::pow(Integer(indep[x]), r);
      if ((k - std::popcount(x)) % 2) {
        total -= term;
      } else {
        total += term;
      }
    }
    if (total > 0) return r;
  }
  return k;
}

inline bool chromatic_at_most(const Graph& g, NodeSet s, std::uint32_t r) { return chromatic_number(g, s) <= r; }
inline bool chromatic_at_most(const Graph& g, std::uint32_t r) { return chromatic_at_most(g, full_set(g.n()), r); }

/// Every node of N has a neighbour in D.
inline bool dominated_check(const Graph& g, NodeSet n_set, NodeSet d_set) {
  for (auto v : members_of(n_set)) {
    if (!(g.out(v) & d_set)) return false;
  }
  return true;
}

/// Nodes reachable from `start` inside `allowed` (undirected view of out-adjacency).
inline NodeSet reachable_within(const Graph& g, std::uint32_t start, NodeSet allowed) {
  NodeSet seen = bit(start);
  NodeSet frontier = seen;
  while (frontier) {
    NodeSet next = 0;
    for (auto v : members_of(frontier)) next |= g.out(v);
    next &= allowed & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

inline bool is_connected(const Graph& g) {
  return g.n() == 0 || reachable_within(g, 0, full_set(g.n())) == full_set(g.n());
}

}  // namespace polyform
