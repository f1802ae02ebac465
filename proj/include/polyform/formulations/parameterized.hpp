#pragma once

// Formulations for the parameterized problems. The polynomial depends on (n, k, theta) and a few
// extra sizes; instances only enter through the assignment.

#include <map>
#include <set>

#include "polyform/formulations/classic.hpp"
#include "polyform/splitters.hpp"

namespace polyform {

// ------------------------------------------------------------------ k-vertex cover

/// Contiguous blocks V_0..V_{theta-1} of size ceil(n/theta); trailing blocks may be empty.
inline std::vector<NodeSet> contiguous_blocks(std::uint32_t n, std::uint32_t theta) {
  const auto b = static_cast<std::uint32_t>(std::max<std::uint64_t>(1, ceil_div(n, theta)));
  std::vector<NodeSet> out(theta, 0);
  for (std::uint32_t v = 0; v < n; ++v) out[v / b] |= bit(v);
  return out;
}

inline Formulation formulate_k_vertex_cover(const Params& p) {
  require_theta(p, 2);
  const std::uint32_t n = p.get_n();
  const std::uint32_t k = p.get_k();
  require_nodes(n, 14, "k-vertex-cover");
  const auto blocks = contiguous_blocks(n, p.theta);

  Formulation f;
  f.params = p;
  f.delta = p.theta * p.theta;
  for (std::uint32_t i = 0; i < p.theta; ++i) {
    for (std::uint32_t j = i + 1; j < p.theta; ++j) {
      for_each_subset_sized(blocks[i], 0, 64, [&](NodeSet a) {
        for_each_subset_sized(blocks[j], 0, 64, [&](NodeSet b) { f.legend.add(detail::key(VarKind::PairCover, i, j, a, b)); });
      });
    }
  }

  MonomialCollector out(f.delta);
  std::vector<VarIndex> factors;
  for_each_subset_sized(full_set(n), 0, k, [&](NodeSet s) {
    factors.clear();
    for (std::uint32_t i = 0; i < p.theta; ++i) {
      for (std::uint32_t j = i + 1; j < p.theta; ++j) {
        factors.push_back(f.legend.at(detail::key(VarKind::PairCover, i, j, s & blocks[i], s & blocks[j])));
      }
    }
    out.add(factors);
  });
  f.poly = std::move(out).build(f.legend.size());
  return f;
}

inline Assignment assign_k_vertex_cover(const Formulation& f, const Graph& g) {
  detail::require_size(g.n(), f.params.get_n(), "graph order");
  const auto blocks = contiguous_blocks(g.n(), f.params.theta);
  Assignment a(f.legend.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& k = f.legend.key(static_cast<VarIndex>(i));
    const NodeSet inside = blocks[k.fields[0]] | blocks[k.fields[1]];
    const NodeSet cover = k.fields[2] | k.fields[3];
    bool ok = true;
    for (const Edge& e : g.edges()) {
      if (contains(inside, e.u) && contains(inside, e.v) && !contains(cover, e.u) && !contains(cover, e.v)) ok = false;
    }
    a[i] = ok;
  }
  return a;
}

// ------------------------------------------------------------------ k-set splitting

inline Formulation formulate_k_set_splitting(const Params& p) {
  require_theta(p, 2);
  const std::uint32_t n = p.get_n();
  const std::uint32_t m = p.get_m();
  const std::uint32_t k = p.get_k();
  require_nodes(n, 10, "k-set-splitting");
  if (m > 16) throw ParameterError("k-set-splitting: m exceeds the desk-scale cap");
  // k = 0 keeps the k = 1 variables so the constant polynomial still has s > 0.
  const auto c = std::max(1U, static_cast<std::uint32_t>(ceil_div(k, p.theta)));
  const NodeSet all = full_set(n);

  // Side pairs (A, B): disjoint, nonempty, each of size <= s; indexed by s.
  std::vector<std::vector<std::pair<NodeSet, NodeSet>>> sides(c + 1);
  for (std::uint32_t s = 1; s <= c; ++s) {
    for_each_subset_sized(all, 1, s, [&](NodeSet a) {
      for_each_subset_sized(all & ~a, 1, s, [&](NodeSet b) { sides[s].emplace_back(a, b); });
    });
  }

  Formulation f;
  f.params = p;
  f.delta = p.theta;
  for_each_subset_sized(full_set(m), 1, c, [&](NodeSet l) {
    for (const auto& [a, b] : sides[static_cast<std::size_t>(std::popcount(l))]) {
      f.legend.add(detail::key(VarKind::Split, a, b, l));
    }
  });

  MonomialCollector out(f.delta);
  std::vector<VarIndex> factors;
  std::vector<NodeSet> groups;
  auto choose_sides = [&](auto& self, std::size_t i, NodeSet ua, NodeSet ub) -> void {
    if (i == groups.size()) {
      out.add(factors);
      return;
    }
    for (const auto& [a, b] : sides[static_cast<std::size_t>(std::popcount(groups[i]))]) {
      if ((a & ub) || (b & ua)) continue;
      factors.push_back(f.legend.at(detail::key(VarKind::Split, a, b, groups[i])));
      self(self, i + 1, ua | a, ub | b);
      factors.pop_back();
    }
  };
  // Splits the chosen index set into at most theta groups of size <= c; each group starts with
  // its smallest element so that every unordered grouping appears once.
  auto group = [&](auto& self, NodeSet left) -> void {
    if (!left) {
      choose_sides(choose_sides, 0, 0, 0);
      return;
    }
    if (groups.size() == p.theta) return;
    const auto first = static_cast<std::uint32_t>(std::countr_zero(left));
    for_each_subset_sized(left & ~bit(first), 0, c - 1, [&](NodeSet rest) {
      groups.push_back(rest | bit(first));
      self(self, left & ~(rest | bit(first)));
      groups.pop_back();
    });
  };
  if (k <= m) for_each_subset_sized(full_set(m), k, k, [&](NodeSet chosen) { group(group, chosen); });
  f.poly = std::move(out).build(f.legend.size());
  return f;
}

inline Assignment assign_k_set_splitting(const Formulation& f, const SetFamily& fam) {
  detail::require_size(fam.n, f.params.get_n(), "universe size");
  detail::require_size(static_cast<std::uint32_t>(fam.sets.size()), f.params.get_m(), "family size");
  Assignment a(f.legend.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& k = f.legend.key(static_cast<VarIndex>(i));
    bool ok = true;
    for (auto l : members_of(k.fields[2])) ok = ok && split_check(k.fields[0], k.fields[1], fam.sets[l]);
    a[i] = ok;
  }
  return a;
}

// ------------------------------------------------------------------ k-Steiner tree

inline std::uint32_t steiner_piece_terminals(std::uint32_t k, std::uint32_t theta) {
  const auto l = static_cast<std::uint32_t>(ceil_div(2 * k, theta - 1));
  return std::min<std::uint32_t>(k, std::max<std::uint32_t>(static_cast<std::uint32_t>(ceil_div(3 * k, theta)), l + 1));
}

inline Formulation formulate_k_steiner_tree(const Params& p) {
  require_theta(p, 2);
  const std::uint32_t n = p.get_n();
  const std::uint32_t k = p.get_k();
  const std::uint32_t w = p.get_w();
  require_nodes(n, 10, "k-steiner-tree");
  if (k > n) throw ParameterError("k-steiner-tree needs k <= n");
  if (w > 64) throw ParameterError("k-steiner-tree: weight bound exceeds the desk-scale cap");
  const std::uint32_t sb = steiner_piece_terminals(k, p.theta);
  const std::uint32_t conn = p.theta - 1;
  if (sb + conn > kSteinerMaxTerminals) throw ParameterError("k-steiner-tree: pieces exceed the terminal cap");

  Formulation f;
  f.params = p;
  f.delta = p.theta + 1;
  for_each_subset_sized(full_set(k), 0, sb, [&](NodeSet s) {
    for_each_subset_sized(full_set(n), 0, conn, [&](NodeSet a) {
      if (!s && !a) return;
      for (std::uint32_t l = 0; l <= w; ++l) f.legend.add(detail::key(VarKind::SteinerPiece, s, a, l));
    });
  });
  for (std::uint32_t l = 0; l <= w; ++l) f.legend.add(detail::key(VarKind::Budget, l));

  MonomialCollector out(f.delta);
  if (k == 0) {
    out.add({f.legend.at(detail::key(VarKind::Budget, 0))});
    f.poly = std::move(out).build(f.legend.size());
    return f;
  }
  std::vector<VarIndex> factors;
  for (std::uint32_t m = 1; m <= p.theta; ++m) {
    // Connector structures: each connector joins >= 2 pieces and the pieces are glued connectedly.
    std::vector<std::vector<NodeSet>> structures;
    if (m == 1) {
      structures.push_back({0});
    } else {
      for_each_subset_sized(full_set(n), 1, conn, [&](NodeSet cset) {
        const auto cs = members_of(cset);
        std::vector<NodeSet> pieces(m, 0);
        auto place = [&](auto& self, std::size_t i) -> void {
          if (i == cs.size()) {
            if (subset_graph(pieces).is_connected()) structures.push_back(pieces);
            return;
          }
          for (NodeSet who = 1; who < (NodeSet{1} << m); ++who) {
            if (std::popcount(who) < 2) continue;
            for (auto j : members_of(who)) pieces[j] |= bit(cs[i]);
            self(self, i + 1);
            for (auto j : members_of(who)) pieces[j] &= ~bit(cs[i]);
          }
        };
        place(place, 0);
      });
    }
    std::vector<NodeSet> terms(m, 0);
    auto emit = [&](const std::vector<NodeSet>& conns) {
      // Pieces ordered by (terminals, connectors) so that relabelled duplicates are skipped.
      for (std::uint32_t i = 0; i + 1 < m; ++i) {
        if (std::make_pair(terms[i], conns[i]) > std::make_pair(terms[i + 1], conns[i + 1])) return;
      }
      for (std::uint32_t i = 0; i < m; ++i) {
        if (!terms[i] && !conns[i]) return;
        if (static_cast<std::uint32_t>(std::popcount(terms[i])) > sb) return;
      }
      std::vector<std::uint32_t> weight(m, 0);
      auto spend = [&](auto& self, std::uint32_t i, std::uint32_t used) -> void {
        if (i == m) {
          factors.clear();
          for (std::uint32_t j = 0; j < m; ++j) {
            factors.push_back(f.legend.at(detail::key(VarKind::SteinerPiece, terms[j], conns[j], weight[j])));
          }
          factors.push_back(f.legend.at(detail::key(VarKind::Budget, used)));
          out.add(factors);
          return;
        }
        for (std::uint32_t l = 0; used + l <= w; ++l) {
          weight[i] = l;
          self(self, i + 1, used + l);
        }
      };
      spend(spend, 0, 0);
    };
    auto place_terminals = [&](auto& self, std::uint32_t x, const std::vector<NodeSet>& conns) -> void {
      if (x == k) {
        emit(conns);
        return;
      }
      for (std::uint32_t j = 0; j < m; ++j) {
        terms[j] |= bit(x);
        self(self, x + 1, conns);
        terms[j] &= ~bit(x);
      }
    };
    for (const auto& conns : structures) place_terminals(place_terminals, 0, conns);
  }
  f.poly = std::move(out).build(f.legend.size());
  return f;
}

inline Assignment assign_k_steiner_tree(const Formulation& f, const Graph& g) {
  detail::require_size(g.n(), f.params.get_n(), "graph order");
  detail::require_size(static_cast<std::uint32_t>(std::popcount(g.terminals)), f.params.get_k(), "terminal count");
  const std::uint32_t t = f.params.get_t();
  if (t > f.params.get_w()) throw ParameterError("k-steiner-tree needs t <= w");
  if (g.directed()) throw ParameterError("k-steiner-tree needs an undirected graph");
  const auto term = members_of(g.terminals);
  std::map<NodeSet, std::optional<std::int64_t>> best;
  Assignment a(f.legend.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& k = f.legend.key(static_cast<VarIndex>(i));
    if (k.kind == VarKind::Budget) {
      a[i] = k.fields[0] <= t;
      continue;
    }
    NodeSet nodes = k.fields[1];
    for (auto x : members_of(k.fields[0])) nodes |= bit(term[x]);
    auto it = best.find(nodes);
    if (it == best.end()) it = best.emplace(nodes, steiner_tree_min(g, nodes)).first;
    a[i] = it->second && *it->second <= static_cast<std::int64_t>(k.fields[2]);
  }
  return a;
}

// ------------------------------------------------------------------ k-internal / k-leaf spanning tree

inline std::uint32_t spanning_piece_size(std::uint32_t n, std::uint32_t theta) {
  const auto l = static_cast<std::uint32_t>(ceil_div(2 * n, theta - 1));
  return std::min<std::uint32_t>(n, std::max<std::uint32_t>(static_cast<std::uint32_t>(ceil_div(3 * n, theta)), l + 1));
}

/// Largest per-piece budget that can matter.
inline std::uint32_t spanning_budget_cap(const Params& p) {
  const bool internal = p.problem == Problem::KInternalSpanningTree;
  return internal ? p.get_k() + p.theta - 1 : p.get_k();
}

/// Piece covers S_1 < ... < S_m (m <= theta, 2 <= |S_i| <= size cap) of [n] whose subset graph is
/// a tree.
inline std::vector<std::vector<NodeSet>> spanning_covers(std::uint32_t n, std::uint32_t theta) {
  const std::uint32_t sb = spanning_piece_size(n, theta);
  std::vector<NodeSet> candidates;
  for_each_subset_sized(full_set(n), 2, sb, [&](NodeSet s) { candidates.push_back(s); });
  std::sort(candidates.begin(), candidates.end());
  std::vector<std::vector<NodeSet>> covers;
  std::vector<NodeSet> pick;
  auto rec = [&](auto& self, std::size_t from, NodeSet covered) -> void {
    if (covered == full_set(n) && subset_graph(pick).is_tree()) covers.push_back(pick);
    if (pick.size() == theta) return;
    for (std::size_t i = from; i < candidates.size(); ++i) {
      // Two pieces sharing two nodes would close a cycle in the subset graph.
      if (std::any_of(pick.begin(), pick.end(), [&](NodeSet q) { return std::popcount(q & candidates[i]) > 1; })) {
        continue;
      }
      pick.push_back(candidates[i]);
      self(self, i + 1, covered | candidates[i]);
      pick.pop_back();
    }
  };
  rec(rec, 0, 0);
  return covers;
}

inline Formulation formulate_k_spanning_tree(const Params& p) {
  require_theta(p, 3);
  const std::uint32_t n = p.get_n();
  const std::uint32_t k = p.get_k();
  if (n < 2) throw ParameterError("spanning-tree formulations need n >= 2");
  require_nodes(n, 8, "spanning-tree");
  const bool internal = p.problem == Problem::KInternalSpanningTree;
  const std::uint32_t sb = spanning_piece_size(n, p.theta);
  const std::uint32_t cap = spanning_budget_cap(p);

  Formulation f;
  f.params = p;
  f.delta = p.theta;
  for_each_subset_sized(full_set(n), 2, sb, [&](NodeSet s) {
    const auto size = static_cast<std::uint32_t>(std::popcount(s));
    for_each_subset_sized(s, 0, size, [&](NodeSet a) {
      for (std::uint32_t r = 0; r <= std::min(size, cap); ++r) f.legend.add(detail::key(VarKind::SpanPiece, s, a, r));
    });
  });

  MonomialCollector out(f.delta);
  std::vector<VarIndex> factors;
  for (const auto& cover : spanning_covers(n, p.theta)) {
    const auto m = static_cast<std::uint32_t>(cover.size());
    std::vector<NodeSet> shared(m, 0);
    std::vector<std::uint32_t> caps(m);
    for (std::uint32_t i = 0; i < m; ++i) {
      for (std::uint32_t j = 0; j < m; ++j) {
        if (i != j) shared[i] |= cover[i] & cover[j];
      }
      caps[i] = std::min<std::uint32_t>(static_cast<std::uint32_t>(std::popcount(cover[i])), cap);
    }
    const std::uint32_t total = internal ? k + m - 1 : k;
    for_each_composition(total, caps, [&](const std::vector<std::uint32_t>& budget) {
      factors.clear();
      for (std::uint32_t i = 0; i < m; ++i) {
        factors.push_back(f.legend.at(detail::key(VarKind::SpanPiece, cover[i], shared[i], budget[i])));
      }
      out.add(factors);
    });
  }
  f.poly = std::move(out).build(f.legend.size());
  return f;
}

/// G[S] plus one pendant leaf attached to every node of A.
inline Graph pendant_extension(const Graph& g, NodeSet s, NodeSet a) {
  const auto nodes = members_of(s);
  std::vector<std::uint32_t> local(g.n(), 0);
  for (std::uint32_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = i;
  const auto extra = static_cast<std::uint32_t>(std::popcount(a));
  Graph h(static_cast<std::uint32_t>(nodes.size()) + extra, false);
  for (const Edge& e : g.edges()) {
    if (contains(s, e.u) && contains(s, e.v)) h.add_edge(local[e.u], local[e.v]);
  }
  std::uint32_t next = static_cast<std::uint32_t>(nodes.size());
  for (auto x : members_of(a)) h.add_edge(local[x], next++);
  return h;
}

inline Assignment assign_k_spanning_tree(const Formulation& f, const Graph& g) {
  detail::require_size(g.n(), f.params.get_n(), "graph order");
  if (g.directed()) throw ParameterError("spanning-tree formulations need an undirected graph");
  const bool internal = f.params.problem == Problem::KInternalSpanningTree;
  std::map<std::pair<NodeSet, NodeSet>, std::optional<SpanningTreeStats>> stats;
  Assignment a(f.legend.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& k = f.legend.key(static_cast<VarIndex>(i));
    const std::pair<NodeSet, NodeSet> sa{k.fields[0], k.fields[1]};
    auto it = stats.find(sa);
    if (it == stats.end()) it = stats.emplace(sa, spanning_tree_stats(pendant_extension(g, sa.first, sa.second))).first;
    if (!it->second) continue;
    const std::uint64_t want = k.fields[2];
    a[i] = internal ? it->second->max_internal >= want
                    : it->second->max_leaves >= want + static_cast<std::uint64_t>(std::popcount(sa.second));
  }
  return a;
}

// ------------------------------------------------------------------ k-nonblocker

inline Formulation formulate_k_nonblocker(const Params& p) {
  require_theta(p, 2);
  const std::uint32_t n = p.get_n();
  const std::uint32_t k = p.get_k();
  require_nodes(n, 10, "k-nonblocker");
  const auto b = static_cast<std::uint32_t>(ceil_div(n, p.theta));
  const NodeSet all = full_set(n);

  Formulation f;
  f.params = p;
  f.delta = p.theta * p.theta;
  for_each_subset_sized(all, 1, b, [&](NodeSet nset) {
    for_each_subset_sized(all & ~nset, 1, b, [&](NodeSet d) { f.legend.add(detail::key(VarKind::NonBlk, nset, d)); });
  });

  MonomialCollector out(f.delta);
  std::vector<VarIndex> factors;
  const std::uint32_t theta = p.theta;
  if (k == 0) out.add({});
  if (k >= 1 && k <= n) {
    for_each_subset_sized(all, k, k, [&](NodeSet nset) {
      // Each node of N needs one dominator, so |D| <= k suffices.
      for_each_subset_sized(all & ~nset, 1, k, [&](NodeSet d) {
        for_each_labelled_split(d, theta, b, [&](const std::vector<NodeSet>& dom) {
          for_each_labelled_split(nset, theta * theta, b, [&](const std::vector<NodeSet>& dominated) {
            factors.clear();
            for (std::uint32_t g = 0; g < theta * theta; ++g) {
              if (!dominated[g]) continue;
              const NodeSet dg = dom[g / theta];
              if (!dg) return;
              factors.push_back(f.legend.at(detail::key(VarKind::NonBlk, dominated[g], dg)));
            }
            out.add(factors);
          });
        });
      });
    });
  }
  f.poly = std::move(out).build(f.legend.size());
  return f;
}

inline Assignment assign_k_nonblocker(const Formulation& f, const Graph& g) {
  detail::require_size(g.n(), f.params.get_n(), "graph order");
  Assignment a(f.legend.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& k = f.legend.key(static_cast<VarIndex>(i));
    a[i] = dominated_check(g, k.fields[0], k.fields[1]);
  }
  return a;
}

// ------------------------------------------------------------------ k-path

/// Colorings used by the k-path formulation: distinct members of the composed splitter, in
/// order of first appearance. k <= 1 needs a single constant coloring; k > n needs none.
inline SplitterFamily k_path_colorings(std::uint32_t n, std::uint32_t k, std::uint32_t theta) {
  if (k <= 1) {
    return SplitterFamily{n, k, 1, SplitterKind::Injective, {Coloring{1, std::vector<Color>(n, 0)}}};
  }
  if (k > n) return SplitterFamily{n, k, 1, SplitterKind::Injective, {}};
  SplitterFamily full = compose_splitter(n, k, theta);
  SplitterFamily out{n, k, full.range, SplitterKind::Injective, {}};
  std::set<std::vector<Color>> seen;
  for (auto& c : full.members) {
    if (seen.insert(c.table).second) out.members.push_back(std::move(c));
  }
  return out;
}

inline Formulation formulate_k_path(const Params& p) {
  require_theta(p, 2);
  const std::uint32_t n = p.get_n();
  const std::uint32_t k = p.get_k();
  require_nodes(n, 12, "k-path");
  SplitterFamily fam = k_path_colorings(n, k, p.theta);
  if (fam.range > 63) throw ParameterError("k-path: coloring range exceeds 63");
  const auto c = static_cast<std::uint32_t>(std::max<std::uint64_t>(1, ceil_div(k, p.theta)));

  Formulation f;
  f.params = p;
  f.delta = 2 * p.theta - 1;

  struct Segment {
    NodeSet colors;
    std::uint32_t u, v;
    VarIndex var;
  };
  // Per coloring, the valid segment endpoints for each color set.
  std::vector<std::map<NodeSet, std::vector<Segment>>> segments(fam.members.size());
  for (std::uint32_t fi = 0; fi < fam.members.size(); ++fi) {
    const Coloring& col = fam.members[fi];
    NodeSet present = 0;
    for (std::uint32_t x = 0; x < n; ++x) present |= bit(col(x));
    for_each_subset_sized(present, 1, c, [&](NodeSet cs) {
      auto& list = segments[fi][cs];
      for (std::uint32_t u = 0; u < n; ++u) {
        if (!contains(cs, col(u))) continue;
        for (std::uint32_t v = 0; v < n; ++v) {
          if (!contains(cs, col(v))) continue;
          if (std::popcount(cs) == 1 ? u != v : col(u) == col(v)) continue;
          list.push_back({cs, u, v, f.legend.add(detail::key(VarKind::ColorfulSeg, fi, cs, u, v))});
        }
      }
    });
  }
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (u != v) f.legend.add(detail::key(VarKind::EdgeVar, u, v));
    }
  }

  MonomialCollector out(f.delta);
  std::vector<VarIndex> factors;
  if (k == 0) out.add({});
  for (std::uint32_t fi = 0; fi < fam.members.size() && k > 0; ++fi) {
    const auto& table = segments[fi];
    auto rec = [&](auto& self, NodeSet used, std::uint32_t left, std::uint32_t pieces,
                   std::optional<std::uint32_t> prev) -> void {
      if (left == 0) {
        out.add(factors);
        return;
      }
      if (pieces == p.theta) return;
      for (const auto& [cs, list] : table) {
        if ((cs & used) || static_cast<std::uint32_t>(std::popcount(cs)) > left) continue;
        for (const Segment& sg : list) {
          const std::size_t mark = factors.size();
          if (prev) factors.push_back(f.legend.at(detail::key(VarKind::EdgeVar, *prev, sg.u)));
          factors.push_back(sg.var);
          self(self, used | cs, left - static_cast<std::uint32_t>(std::popcount(cs)), pieces + 1, sg.v);
          factors.resize(mark);
        }
      }
    };
    rec(rec, 0, k, 0, std::nullopt);
  }
  f.poly = std::move(out).build(f.legend.size());
  f.splitter = std::move(fam);
  return f;
}

inline Assignment assign_k_path(const Formulation& f, const Graph& g) {
  detail::require_size(g.n(), f.params.get_n(), "graph order");
  if (!f.splitter) throw std::logic_error("k-path formulation without colorings");
  std::map<std::tuple<std::uint64_t, NodeSet, std::uint64_t>, NodeSet> ends;
  Assignment a(f.legend.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& k = f.legend.key(static_cast<VarIndex>(i));
    if (k.kind == VarKind::EdgeVar) {
      a[i] = g.has_edge(static_cast<std::uint32_t>(k.fields[0]), static_cast<std::uint32_t>(k.fields[1]));
      continue;
    }
    const auto key = std::make_tuple(k.fields[0], k.fields[1], k.fields[2]);
    auto it = ends.find(key);
    if (it == ends.end()) {
      it = ends.emplace(key, colorful_path_ends(g, f.splitter->members[k.fields[0]], k.fields[1],
                                                static_cast<std::uint32_t>(k.fields[2])))
               .first;
    }
    a[i] = contains(it->second, static_cast<std::uint32_t>(k.fields[3]));
  }
  return a;
}

}  // namespace polyform
