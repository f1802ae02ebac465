#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "polyform/errors.hpp"
#include "polyform/solvers/instances.hpp"
#include "polyform/splitters/splitter.hpp"

namespace polyform {

using ColorSet = std::uint64_t;

/// End nodes v of simple paths from u whose node colors are pairwise distinct and together form
/// exactly `colors`. DP over (color subset, end node).
inline NodeSet colorful_path_ends(const Graph& g, const Coloring& f, ColorSet colors, std::uint32_t u) {
  if (!contains(colors, f(u))) return 0;
  const auto palette = members_of(colors);
  const auto c = static_cast<std::uint32_t>(palette.size());
  if (c > 20) throw ParameterError("colorful path: too many colors");
  std::vector<std::int32_t> local(f.range, -1);
  for (std::uint32_t i = 0; i < c; ++i) {
    if (palette[i] < f.range) local[palette[i]] = static_cast<std::int32_t>(i);
  }
  std::vector<NodeSet> reach(std::size_t{1} << c, 0);
  reach[std::size_t{1} << local[f(u)]] = bit(u);
  for (std::size_t mask = 1; mask < reach.size(); ++mask) {
    for (auto w : members_of(reach[mask])) {
      for (auto x : members_of(g.out(w))) {
        const std::int32_t lx = local[f(x)];
        if (lx < 0 || (mask >> lx) & 1U) continue;
        reach[mask | (std::size_t{1} << lx)] |= bit(x);
      }
    }
  }
  return reach.back();
}

inline bool colorful_path_exact(const Graph& g, const Coloring& f, ColorSet colors, std::uint32_t u, std::uint32_t v) {
  return contains(colorful_path_ends(g, f, colors, u), v);
}

/// Some simple path has exactly k nodes (DFS over simple paths).
inline bool has_path_with_nodes(const Graph& g, std::uint32_t k) {
  if (k == 0) return true;
  if (k > g.n()) return false;
  auto dfs = [&](auto& self, std::uint32_t v, NodeSet used, std::uint32_t len) -> bool {
    if (len == k) return true;
    for (auto x : members_of(g.out(v) & ~used)) {
      if (self(self, x, used | bit(x), len + 1)) return true;
    }
    return false;
  };
  for (std::uint32_t v = 0; v < g.n(); ++v) {
    if (dfs(dfs, v, bit(v), 1)) return true;
  }
  return false;
}

inline constexpr std::int64_t kInfiniteWeight = std::numeric_limits<std::int64_t>::max() / 4;
inline constexpr std::uint32_t kSteinerMaxTerminals = 10;

/// Minimum weight of a tree spanning the terminals (Dreyfus-Wagner); nullopt if they are not
/// all in one component.
inline std::optional<std::int64_t> steiner_tree_min(const Graph& g, NodeSet terminals) {
  const auto term = members_of(terminals);
  const auto t = static_cast<std::uint32_t>(term.size());
  if (t > kSteinerMaxTerminals) throw ParameterError("steiner: too many terminals");
  if (t <= 1) return 0;
  const std::uint32_t n = g.n();
  std::vector<std::vector<std::int64_t>> dist(n, std::vector<std::int64_t>(n, kInfiniteWeight));
  for (std::uint32_t v = 0; v < n; ++v) dist[v][v] = 0;
  for (const Edge& e : g.edges()) {
    dist[e.u][e.v] = std::min(dist[e.u][e.v], e.w);
    dist[e.v][e.u] = std::min(dist[e.v][e.u], e.w);
  }
  for (std::uint32_t m = 0; m < n; ++m) {
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) dist[a][b] = std::min(dist[a][b], dist[a][m] + dist[m][b]);
    }
  }
  // dp[D][v]: cheapest tree connecting terminal subset D (over the first t-1 terminals) and v.
  const std::uint32_t base = t - 1;
  std::vector<std::vector<std::int64_t>> dp(std::size_t{1} << base, std::vector<std::int64_t>(n, kInfiniteWeight));
  for (std::uint32_t i = 0; i < base; ++i) {
    for (std::uint32_t v = 0; v < n; ++v) dp[1U << i][v] = dist[term[i]][v];
  }
  for (std::uint32_t d = 1; d < (1U << base); ++d) {
    if (std::popcount(d) < 2) continue;
    std::vector<std::int64_t> merge(n, kInfiniteWeight);
    for (std::uint32_t e = (d - 1) & d; e; e = (e - 1) & d) {
      if (e < (d ^ e)) continue;  // each split once
      for (std::uint32_t u = 0; u < n; ++u) merge[u] = std::min(merge[u], dp[e][u] + dp[d ^ e][u]);
    }
    for (std::uint32_t v = 0; v < n; ++v) {
      for (std::uint32_t u = 0; u < n; ++u) dp[d][v] = std::min(dp[d][v], merge[u] + dist[u][v]);
    }
  }
  const std::int64_t best = dp[(1U << base) - 1][term[base]];
  if (best >= kInfiniteWeight) return std::nullopt;
  return best;
}

}  // namespace polyform
