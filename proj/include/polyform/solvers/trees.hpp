#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polyform/errors.hpp"
#include "polyform/solvers/instances.hpp"

namespace polyform {

// ---------------------------------------------------------------- spanning trees

inline constexpr std::uint32_t kSpanningMaxNodes = 16;

struct SpanningTreeStats {
  std::uint64_t count = 0;
  std::uint32_t max_internal = 0;  // nodes of degree >= 2
  std::uint32_t max_leaves = 0;    // nodes of degree <= 1
};

/// Calls visit(degrees) for every spanning tree. Edges are decided in order; an edge may be
/// skipped only while the remaining edges can still connect the graph.
template <typename Visit>
void for_each_spanning_tree(const Graph& g, Visit&& visit) {
  const std::uint32_t n = g.n();
  if (n > kSpanningMaxNodes) throw ParameterError("spanning tree enumeration: n exceeds the desk-scale cap");
  const auto& edges = g.edges();
  std::vector<std::uint32_t> degree(n, 0);
  std::vector<bool> chosen(edges.size(), false);

  auto find = [](std::vector<std::uint32_t>& parent, std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // Whether chosen edges plus edges[from..] connect every node.
  auto still_connectable = [&](std::size_t from) {
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0U);
    std::uint32_t parts = n;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (i < from && !chosen[i]) continue;
      const auto a = find(parent, edges[i].u);
      const auto b = find(parent, edges[i].v);
      if (a != b) {
        parent[a] = b;
        --parts;
      }
    }
    return parts <= 1;
  };

  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0U);
  auto rec = [&](auto& self, std::size_t i, std::uint32_t used, std::vector<std::uint32_t> uf) -> void {
    if (used + 1 == n) {
      visit(degree);
      return;
    }
    if (i == edges.size()) return;
    const auto a = find(uf, edges[i].u);
    const auto b = find(uf, edges[i].v);
    if (a != b) {
      auto next = uf;
      next[a] = b;
      chosen[i] = true;
      ++degree[edges[i].u];
      ++degree[edges[i].v];
      self(self, i + 1, used + 1, std::move(next));
      --degree[edges[i].u];
      --degree[edges[i].v];
      chosen[i] = false;
    }
    if (still_connectable(i + 1)) self(self, i + 1, used, std::move(uf));
  };
  if (n == 0) return;
  if (n == 1) {
    visit(degree);
    return;
  }
  if (!still_connectable(0)) return;
  rec(rec, 0, 0, parent);
}

/// Statistics over all spanning trees; nullopt when G is disconnected (or empty).
inline std::optional<SpanningTreeStats> spanning_tree_stats(const Graph& g) {
  SpanningTreeStats st;
  for_each_spanning_tree(g, [&](const std::vector<std::uint32_t>& deg) {
    std::uint32_t internal = 0;
    for (auto d : deg) internal += d >= 2;
    ++st.count;
    st.max_internal = std::max(st.max_internal, internal);
    st.max_leaves = std::max(st.max_leaves, static_cast<std::uint32_t>(deg.size()) - internal);
  });
  if (st.count == 0) return std::nullopt;
  return st;
}

inline std::optional<std::uint32_t> spanning_tree_internal_max(const Graph& g) {
  auto s = spanning_tree_stats(g);
  if (!s) return std::nullopt;
  return s->max_internal;
}

inline std::optional<std::uint32_t> spanning_tree_leaf_max(const Graph& g) {
  auto s = spanning_tree_stats(g);
  if (!s) return std::nullopt;
  return s->max_leaves;
}

// ---------------------------------------------------------------- rooted trees

/// Tree on nodes 0..n-1 rooted at `root`.
struct RootedTree {
  std::uint32_t root = 0;
  std::vector<std::int32_t> parent;  // -1 at the root
  std::vector<std::vector<std::uint32_t>> children;

  [[nodiscard]] std::uint32_t n() const { return static_cast<std::uint32_t>(parent.size()); }

  static RootedTree from_edges(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                               std::uint32_t root = 0) {
    if (n == 0) throw ParameterError("tree needs at least one node");
    if (edges.size() + 1 != n) throw ParameterError("a tree on n nodes has n-1 edges");
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (auto [a, b] : edges) {
      if (a >= n || b >= n || a == b) throw ParameterError("bad tree edge");
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    RootedTree t;
    t.root = root;
    t.parent.assign(n, -2);
    t.children.assign(n, {});
    t.parent[root] = -1;
    std::vector<std::uint32_t> stack{root};
    std::uint32_t seen = 1;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v]) {
        if (t.parent[w] != -2) continue;
        t.parent[w] = static_cast<std::int32_t>(v);
        t.children[v].push_back(w);
        stack.push_back(w);
        ++seen;
      }
    }
    if (seen != n) throw ParameterError("edges do not form a tree");
    for (auto& c : t.children) std::sort(c.begin(), c.end());
    return t;
  }
};

/// Result of the subtree search: U is u plus some of u's child subtrees.
struct Subtree {
  std::uint32_t top = 0;
  NodeSet nodes = 0;  // includes top
};

namespace detail {

inline NodeSet subtree_nodes(const RootedTree& t, std::uint32_t v, NodeSet alive) {
  NodeSet s = bit(v);
  for (auto c : t.children[v]) {
    if (contains(alive, c)) s |= subtree_nodes(t, c, alive);
  }
  return s;
}

}  // namespace detail

/// Finds u and U with l/2 <= |M ∩ (U \ {u})| <= l inside the live part `alive` of the tree
/// (a connected set containing the root). Requires |M ∩ alive| > l.
inline Subtree tree_find_subtree(const RootedTree& t, NodeSet marked, std::uint32_t l, NodeSet alive) {
  marked &= alive;
  if (static_cast<std::uint32_t>(std::popcount(marked)) <= l) {
    throw ContractError("tree_find_subtree needs more than l marked nodes");
  }
  std::uint32_t u = t.root;
  while (true) {
    std::vector<std::pair<std::uint32_t, NodeSet>> kids;
    for (auto c : t.children[u]) {
      if (contains(alive, c)) kids.emplace_back(c, detail::subtree_nodes(t, c, alive));
    }
    auto weight = [&](NodeSet s) { return static_cast<std::uint32_t>(std::popcount(s & marked)); };
    // Case 1: a heavy child, descend.
    auto heavy = std::find_if(kids.begin(), kids.end(), [&](const auto& k) { return weight(k.second) > l; });
    if (heavy != kids.end()) {
      u = heavy->first;
      continue;
    }
    // Case 2: a single child subtree already in range.
    for (const auto& [c, s] : kids) {
      if (2 * weight(s) >= l) return {u, bit(u) | s};
    }
    // Case 3: every child is light; take a prefix of children until the weight reaches l/2.
    NodeSet acc = bit(u);
    for (const auto& [c, s] : kids) {
      acc |= s;
      if (2 * weight(acc & ~bit(u)) >= l) return {u, acc};
    }
    if (kids.empty() && l == 0) return {u, bit(u)};
    throw std::logic_error("tree_find_subtree: marked weight below u is too small");
  }
}

inline Subtree tree_find_subtree(const RootedTree& t, NodeSet marked, std::uint32_t l) {
  return tree_find_subtree(t, marked, l, full_set(t.n()));
}

using TreeEdge = std::pair<std::uint32_t, std::uint32_t>;

struct EdgeBlock {
  std::vector<TreeEdge> edges;  // (parent, child)
  NodeSet nodes = 0;
};

/// Partitions the tree's edges into at most theta connected blocks, each holding at most
/// 2k/(theta-1) + 2 marked nodes, by repeatedly peeling subtrees with l = ceil(2k/(theta-1)).
inline std::vector<EdgeBlock> tree_edge_partition(const RootedTree& t, NodeSet marked, std::uint32_t theta) {
  if (theta < 2) throw ParameterError("tree_edge_partition needs theta >= 2");
  const auto k = static_cast<std::uint32_t>(std::popcount(marked & full_set(t.n())));
  const std::uint32_t l = (2 * k + theta - 2) / (theta - 1);
  NodeSet alive = full_set(t.n());
  std::vector<EdgeBlock> blocks;
  auto block_of = [&](NodeSet nodes) {
    EdgeBlock b;
    b.nodes = nodes;
    for (auto v : members_of(nodes)) {
      if (t.parent[v] >= 0 && contains(nodes, static_cast<std::uint32_t>(t.parent[v]))) {
        b.edges.emplace_back(static_cast<std::uint32_t>(t.parent[v]), v);
      }
    }
    return b;
  };
  while (static_cast<std::uint32_t>(std::popcount(marked & alive)) > l) {
    const Subtree s = tree_find_subtree(t, marked, l, alive);
    blocks.push_back(block_of(s.nodes));
    alive &= ~(s.nodes & ~bit(s.top));
  }
  EdgeBlock rest = block_of(alive);
  if (!rest.edges.empty()) blocks.push_back(std::move(rest));
  return blocks;
}

// ---------------------------------------------------------------- subset graphs

/// Bipartite graph with a node per set X_i and a node per element lying in at least two sets.
struct SubsetGraph {
  std::vector<NodeSet> sets;
  NodeSet connectors = 0;

  [[nodiscard]] std::size_t node_count() const { return sets.size() + static_cast<std::size_t>(std::popcount(connectors)); }
  [[nodiscard]] std::size_t edge_count() const {
    std::size_t e = 0;
    for (NodeSet s : sets) e += static_cast<std::size_t>(std::popcount(s & connectors));
    return e;
  }

  [[nodiscard]] bool is_connected() const {
    if (sets.empty()) return true;
    std::vector<bool> reached(sets.size(), false);
    reached[0] = true;
    NodeSet elems = sets[0] & connectors;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        if (!reached[i] && (sets[i] & elems)) {
          reached[i] = true;
          elems |= sets[i] & connectors;
          grew = true;
        }
      }
    }
    // Every connector lies in >= 2 sets, so it is reached once any of its sets is.
    return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
  }

  [[nodiscard]] bool is_tree() const { return !sets.empty() && is_connected() && edge_count() + 1 == node_count(); }
};

inline SubsetGraph subset_graph(const std::vector<NodeSet>& sets) {
  SubsetGraph b;
  b.sets = sets;
  NodeSet seen = 0;
  for (NodeSet s : sets) {
    b.connectors |= seen & s;
    seen |= s;
  }
  return b;
}

}  // namespace polyform
