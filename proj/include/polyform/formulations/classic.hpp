#pragma once

// Formulations for the non-parameterized problems: each formulate_* builds the legend and the
// polynomial from size parameters only; each assign_* evaluates every legend variable on an
// instance through the solver oracles.

#include <map>
#include <utility>

#include "polyform/formulations/core.hpp"
#include "polyform/solvers.hpp"

namespace polyform {

namespace detail {

inline VariableKey key(VarKind kind, std::uint64_t a = 0, std::uint64_t b = 0, std::uint64_t c = 0,
                       std::uint64_t d = 0) {
  return VariableKey{kind, {a, b, c, d}};
}

inline void require_size(std::uint32_t actual, std::uint32_t expected, const char* what) {
  if (actual != expected) {
    throw ParameterError(std::string(what) + " is " + std::to_string(actual) + " but the formulation expects " +
                         std::to_string(expected));
  }
}

/// Assigns the elements of `items` to groups with exactly the given sizes.
template <typename F>
void for_each_sized_split(NodeSet items, const std::vector<std::uint32_t>& sizes, F&& f) {
  const auto elems = members_of(items);
  std::vector<NodeSet> part(sizes.size(), 0);
  std::vector<std::uint32_t> left = sizes;
  auto rec = [&](auto& self, std::size_t i) -> void {
    if (i == elems.size()) {
      f(static_cast<const std::vector<NodeSet>&>(part));
      return;
    }
    for (std::size_t g = 0; g < sizes.size(); ++g) {
      if (left[g] == 0) continue;
      --left[g];
      part[g] |= bit(elems[i]);
      self(self, i + 1);
      part[g] &= ~bit(elems[i]);
      ++left[g];
    }
  };
  std::uint32_t total = 0;
  for (auto s : sizes) total += s;
  if (total == elems.size()) rec(rec, 0);
}

/// Budgets t_i in [1, min(|S_i|, limit)] for the nonempty groups with sum <= total.
template <typename F>
void for_each_budget(const std::vector<NodeSet>& groups, std::uint32_t total, F&& f) {
  std::vector<std::uint32_t> budget(groups.size(), 0);
  auto rec = [&](auto& self, std::size_t i, std::uint32_t left) -> void {
    if (i == groups.size()) {
      f(static_cast<const std::vector<std::uint32_t>&>(budget));
      return;
    }
    if (!groups[i]) {
      budget[i] = 0;
      self(self, i + 1, left);
      return;
    }
    const auto size = static_cast<std::uint32_t>(std::popcount(groups[i]));
    for (std::uint32_t r = 1; r <= std::min(size, left); ++r) {
      budget[i] = r;
      self(self, i + 1, left - r);
    }
  };
  rec(rec, 0, total);
}

/// Collections of pairwise disjoint sets within `universe`, each of size >= min_size (>= 1),
/// listed by increasing minimum element; at most max_count sets.
template <typename F>
void for_each_large_classes(NodeSet universe, std::uint32_t min_size, std::uint32_t max_count, F&& f) {
  std::vector<NodeSet> chosen;
  auto rec = [&](auto& self, NodeSet free, std::uint32_t min_start) -> void {
    f(static_cast<const std::vector<NodeSet>&>(chosen), free);
    if (chosen.size() == max_count) return;
    for (auto start : members_of(free)) {
      if (start < min_start) continue;
      // Members above `start`; the class contains start as its minimum.
      const NodeSet above = free & ~(bit(start + 1) - 1);
      for_each_subset_sized(above, min_size - 1, static_cast<std::uint32_t>(std::popcount(above)), [&](NodeSet rest) {
        const NodeSet cls = rest | bit(start);
        chosen.push_back(cls);
        self(self, free & ~cls, start + 1);
        chosen.pop_back();
      });
    }
  };
  rec(rec, universe, 0);
}

}  // namespace detail

// ------------------------------------------------------------------ Hamiltonian path

struct HamLayout {
  std::uint32_t block = 0;  // ceil(n/theta)
  std::uint32_t blocks = 0;
  std::uint32_t last = 0;   // size of the final block
};

inline HamLayout ham_layout(std::uint32_t n, std::uint32_t theta) {
  HamLayout l;
  l.block = static_cast<std::uint32_t>(ceil_div(n, theta));
  l.blocks = static_cast<std::uint32_t>(ceil_div(n, l.block));
  l.last = n - (l.blocks - 1) * l.block;
  return l;
}

inline Formulation formulate_ham_path(const Params& p) {
  require_theta(p, 2);
  const std::uint32_t n = p.get_n();
  if (n < p.theta) throw ParameterError("ham-path needs n >= theta");
  require_nodes(n, 16, "ham-path");
  const HamLayout lay = ham_layout(n, p.theta);
  const NodeSet all = full_set(n);

  Formulation f;
  f.params = p;
  f.delta = p.theta;
  std::vector<std::uint32_t> sizes{lay.last};
  if (lay.block != lay.last) sizes.push_back(lay.block);
  std::sort(sizes.begin(), sizes.end());
  for (auto size : sizes) {
    for_each_subset_sized(all, size, size, [&](NodeSet s) {
      for (auto u : members_of(s)) {
        for (auto v : members_of(all & ~s)) f.legend.add(detail::key(VarKind::HamSeg, s, u, v));
        if (size == lay.last) f.legend.add(detail::key(VarKind::HamSeg, s, u, kOpenEnd));
      }
    });
  }

  MonomialCollector out(f.delta);
  std::vector<NodeSet> part(lay.blocks);
  std::vector<std::uint32_t> start(lay.blocks);
  std::vector<VarIndex> factors(lay.blocks);
  auto seg = [&](NodeSet s, std::uint64_t u, std::uint64_t v) {
    return f.legend.at(detail::key(VarKind::HamSeg, s, u, v));
  };
  auto pick_nodes = [&](auto& self, std::uint32_t i) -> void {
    if (i == lay.blocks) {
      const std::uint32_t last = lay.blocks - 1;
      for (std::uint32_t j = 0; j < last; ++j) factors[j] = seg(part[j], start[j], start[j + 1]);
      for (auto v : members_of(all & ~part[last])) {
        factors[last] = seg(part[last], start[last], v);
        out.add(factors);
      }
      factors[last] = seg(part[last], start[last], kOpenEnd);
      out.add(factors);
      return;
    }
    for (auto u : members_of(part[i])) {
      start[i] = u;
      self(self, i + 1);
    }
  };
  auto pick_blocks = [&](auto& self, std::uint32_t i, NodeSet left) -> void {
    if (i == lay.blocks) {
      pick_nodes(pick_nodes, 0);
      return;
    }
    const std::uint32_t size = i + 1 == lay.blocks ? lay.last : lay.block;
    for_each_subset_sized(left, size, size, [&](NodeSet s) {
      part[i] = s;
      self(self, i + 1, left & ~s);
    });
  };
  pick_blocks(pick_blocks, 0, all);
  f.poly = std::move(out).build(f.legend.size());
  return f;
}

inline Assignment assign_ham_path(const Formulation& f, const Graph& g) {
  detail::require_size(g.n(), f.params.get_n(), "graph order");
  std::map<std::pair<NodeSet, std::uint32_t>, NodeSet> ends;
  Assignment a(f.legend.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& k = f.legend.key(static_cast<VarIndex>(i));
    const NodeSet s = k.fields[0];
    const auto u = static_cast<std::uint32_t>(k.fields[1]);
    auto it = ends.find({s, u});
    if (it == ends.end()) it = ends.emplace(std::make_pair(s, u), ham_path_ends(g, s, u)).first;
    a[i] = k.fields[2] == kOpenEnd ? it->second != 0 : (it->second & g.in(static_cast<std::uint32_t>(k.fields[2]))) != 0;
  }
  return a;
}

// ------------------------------------------------------------------ independent set, clique, vertex cover

/// Target size for the underlying independent-set formulation.
inline std::uint32_t independent_set_target(const Params& p) {
  const std::uint32_t n = p.get_n();
  const std::uint32_t t = p.get_t();
  if (t > n) throw ParameterError("target t must satisfy t <= n");
  return p.problem == Problem::VertexCover ? n - t : t;
}

inline Formulation formulate_independent_set(const Params& p) {
  require_theta(p, 2);
  const std::uint32_t n = p.get_n();
  require_nodes(n, 20, "independent-set");
  const std::uint32_t target = independent_set_target(p);
  const auto b = static_cast<std::uint32_t>(ceil_div(n, p.theta));

  Formulation f;
  f.params = p;
  f.delta = p.theta * (p.theta - 1) / 2;
  for_each_subset_sized(full_set(n), 1, 2 * b, [&](NodeSet s) { f.legend.add(detail::key(VarKind::IndepSet, s)); });

  MonomialCollector out(f.delta);
  std::vector<VarIndex> factors;
  for_each_subset_sized(full_set(n), target, target, [&](NodeSet u) {
    for_each_labelled_split(u, p.theta, b, [&](const std::vector<NodeSet>& part) {
      factors.clear();
      for (std::uint32_t i = 0; i < p.theta; ++i) {
        for (std::uint32_t j = i + 1; j < p.theta; ++j) {
          if (part[i] | part[j]) factors.push_back(f.legend.at(detail::key(VarKind::IndepSet, part[i] | part[j])));
        }
      }
      out.add(factors);
    });
  });
  f.poly = std::move(out).build(f.legend.size());
  return f;
}

inline Assignment assign_independent_set(const Formulation& f, const Graph& g) {
  detail::require_size(g.n(), f.params.get_n(), "graph order");
  const Graph& h = f.params.problem == Problem::Clique ? g.complement() : g;
  Assignment a(f.legend.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = is_independent(h, f.legend.key(static_cast<VarIndex>(i)).fields[0]);
  return a;
}

// ------------------------------------------------------------------ MAX-k-SAT

struct SatBlocks {
  std::uint32_t block = 0;
  std::vector<NodeSet> block_sets;               // chosen k-subsets of block indices
  std::vector<std::vector<std::uint32_t>> vars;  // variables (0-based) covered by each block set
};

inline SatBlocks sat_blocks(std::uint32_t n, std::uint32_t k, std::uint32_t theta) {
  SatBlocks sb;
  sb.block = static_cast<std::uint32_t>(std::max<std::uint64_t>(1, ceil_div(n, theta)));
  for_each_subset_sized(full_set(theta), k, k, [&](NodeSet bs) {
    std::vector<std::uint32_t> vs;
    for (auto j : members_of(bs)) {
      for (std::uint32_t v = j * sb.block; v < std::min(n, (j + 1) * sb.block); ++v) vs.push_back(v);
    }
    sb.block_sets.push_back(bs);
    sb.vars.push_back(std::move(vs));
  });
  return sb;
}

inline std::uint32_t sat_threshold(const Params& p) {
  return p.problem == Problem::KSat ? p.get_m() : p.get_t();
}

inline Formulation formulate_max_ksat(const Params& p) {
  require_theta(p, 2);
  const std::uint32_t n = p.get_n();
  const std::uint32_t k = p.get_k();
  const std::uint32_t m = p.get_m();
  const std::uint32_t t = sat_threshold(p);
  if (k == 0 || k > p.theta) throw ParameterError("max-ksat needs 1 <= k <= theta");
  if (t > m) throw ParameterError("threshold t must satisfy t <= m");
  require_nodes(n, 14, "max-ksat");
  const SatBlocks sb = sat_blocks(n, k, p.theta);

  Formulation f;
  f.params = p;
  f.delta = static_cast<std::uint32_t>(binomial(p.theta, k));
  for (std::size_t j = 0; j < sb.block_sets.size(); ++j) {
    if (sb.vars[j].size() > 20) throw ParameterError("max-ksat: block set too wide");
    for (std::uint64_t tau = 0; tau < (std::uint64_t{1} << sb.vars[j].size()); ++tau) {
      for (std::uint32_t r = 0; r <= t; ++r) f.legend.add(detail::key(VarKind::MaxSat, sb.block_sets[j], tau, r));
    }
  }

  MonomialCollector out(f.delta);
  const std::vector<std::uint32_t> caps(sb.block_sets.size(), t);
  std::vector<VarIndex> factors;
  for_each_composition(t, caps, [&](const std::vector<std::uint32_t>& share) {
    for (std::uint64_t mu = 0; mu < (std::uint64_t{1} << n); ++mu) {
      factors.clear();
      for (std::size_t j = 0; j < share.size(); ++j) {
        std::uint64_t tau = 0;
        for (std::size_t i = 0; i < sb.vars[j].size(); ++i) tau |= ((mu >> sb.vars[j][i]) & 1U) << i;
        factors.push_back(f.legend.at(detail::key(VarKind::MaxSat, sb.block_sets[j], tau, share[j])));
      }
      out.add(factors);
    }
  });
  f.poly = std::move(out).build(f.legend.size());
  return f;
}

/// Block set b(C): blocks of the clause's variables, padded with the smallest other block indices.
inline NodeSet clause_blocks(const std::vector<int>& clause, std::uint32_t block, std::uint32_t k) {
  NodeSet bs = 0;
  for (int lit : clause) bs |= bit(static_cast<std::uint32_t>(std::abs(lit) - 1) / block);
  if (static_cast<std::uint32_t>(std::popcount(bs)) > k) {
    throw ParameterError("clause spans more than k blocks");
  }
  for (std::uint32_t j = 0; static_cast<std::uint32_t>(std::popcount(bs)) < k; ++j) bs |= bit(j);
  return bs;
}

inline Assignment assign_max_ksat(const Formulation& f, const CnfFormula& cnf) {
  const std::uint32_t n = f.params.get_n();
  const std::uint32_t k = f.params.get_k();
  detail::require_size(cnf.n, n, "variable count");
  if (f.params.problem == Problem::KSat) {
    detail::require_size(static_cast<std::uint32_t>(cnf.clauses.size()), f.params.get_m(), "clause count");
  }
  if (cnf.width() > k) throw ParameterError("clause width exceeds k");
  const SatBlocks sb = sat_blocks(n, k, f.params.theta);
  std::map<NodeSet, std::vector<std::uint32_t>> by_blocks;
  for (std::uint32_t c = 0; c < cnf.clauses.size(); ++c) by_blocks[clause_blocks(cnf.clauses[c], sb.block, k)].push_back(c);
  std::map<NodeSet, std::size_t> which;
  for (std::size_t j = 0; j < sb.block_sets.size(); ++j) which[sb.block_sets[j]] = j;

  std::map<std::pair<NodeSet, std::uint64_t>, std::uint32_t> satisfied;
  Assignment a(f.legend.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& key = f.legend.key(static_cast<VarIndex>(i));
    const NodeSet bs = key.fields[0];
    const std::uint64_t tau = key.fields[1];
    auto it = satisfied.find({bs, tau});
    if (it == satisfied.end()) {
      const auto& vars = sb.vars[which.at(bs)];
      std::uint64_t mu = 0;
      for (std::size_t v = 0; v < vars.size(); ++v) mu |= ((tau >> v) & 1U) << vars[v];
      static const std::vector<std::uint32_t> none;
      auto c = by_blocks.find(bs);
      it = satisfied.emplace(std::make_pair(bs, tau), sat_count_restricted(cnf, c == by_blocks.end() ? none : c->second, mu)).first;
    }
    a[i] = it->second >= key.fields[2];
  }
  return a;
}

// ------------------------------------------------------------------ graph coloring

inline Formulation formulate_graph_coloring(const Params& p) {
  require_theta(p, 2);
  const std::uint32_t n = p.get_n();
  const std::uint32_t t = p.get_t();
  if (t < 1 || t > n) throw ParameterError("graph-coloring needs 1 <= t <= n");
  require_nodes(n, 12, "graph-coloring");
  const auto b = static_cast<std::uint32_t>(ceil_div(n, p.theta));
  const NodeSet all = full_set(n);

  Formulation f;
  f.params = p;
  f.delta = 2 * p.theta * p.theta + p.theta;
  for_each_subset_sized(all, 1, 2 * b, [&](NodeSet s) {
    const auto size = static_cast<std::uint32_t>(std::popcount(s));
    for (std::uint32_t r = 1; r <= std::min(size, t); ++r) f.legend.add(detail::key(VarKind::ColorBudget, s, r));
  });
  for_each_subset_sized(all, 1, 2 * b, [&](NodeSet s) { f.legend.add(detail::key(VarKind::ColorIndep, s)); });

  MonomialCollector out(f.delta);
  std::vector<VarIndex> factors;
  detail::for_each_large_classes(all, b + 1, std::min(p.theta, t), [&](const std::vector<NodeSet>& large, NodeSet rest) {
    std::vector<VarIndex> base;
    for (NodeSet cls : large) {
      const auto chunks = consecutive_chunks(cls, b);
      for (std::size_t i = 0; i < chunks.size(); ++i) {
        for (std::size_t j = i + 1; j < chunks.size(); ++j) {
          base.push_back(f.legend.at(detail::key(VarKind::ColorIndep, chunks[i] | chunks[j])));
        }
      }
    }
    const auto l = static_cast<std::uint32_t>(large.size());
    for_each_labelled_split(rest, p.theta, 2 * b, [&](const std::vector<NodeSet>& groups) {
      detail::for_each_budget(groups, t - l, [&](const std::vector<std::uint32_t>& budget) {
        factors = base;
        for (std::size_t i = 0; i < groups.size(); ++i) {
          if (groups[i]) factors.push_back(f.legend.at(detail::key(VarKind::ColorBudget, groups[i], budget[i])));
        }
        out.add(factors);
      });
    });
  });
  f.poly = std::move(out).build(f.legend.size());
  return f;
}

inline Assignment assign_graph_coloring(const Formulation& f, const Graph& g) {
  detail::require_size(g.n(), f.params.get_n(), "graph order");
  std::map<NodeSet, std::uint32_t> chi;
  Assignment a(f.legend.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& k = f.legend.key(static_cast<VarIndex>(i));
    if (k.kind == VarKind::ColorIndep) {
      a[i] = is_independent(g, k.fields[0]);
      continue;
    }
    auto it = chi.find(k.fields[0]);
    if (it == chi.end()) it = chi.emplace(k.fields[0], chromatic_number(g, k.fields[0])).first;
    a[i] = it->second <= k.fields[1];
  }
  return a;
}

// ------------------------------------------------------------------ set cover

inline Formulation formulate_set_cover(const Params& p) {
  require_theta(p, 2);
  const std::uint32_t n = p.get_n();
  const std::uint32_t m = p.get_m();
  const std::uint32_t t = p.get_t();
  if (n == 0) throw ParameterError("set-cover needs a nonempty universe");
  require_nodes(n, 12, "set-cover");
  const auto b = static_cast<std::uint32_t>(ceil_div(n, p.theta));
  const NodeSet all = full_set(n);

  Formulation f;
  f.params = p;
  f.delta = (p.theta + 1) * p.theta;
  for_each_subset_sized(all, 1, 2 * b, [&](NodeSet s) {
    const auto size = static_cast<std::uint32_t>(std::popcount(s));
    for (std::uint32_t r = 1; r <= std::min(size, t); ++r) f.legend.add(detail::key(VarKind::CoverBudget, s, r));
  });
  for_each_subset_sized(all, 1, b, [&](NodeSet s) {
    for (std::uint32_t i = 0; i < m; ++i) f.legend.add(detail::key(VarKind::CoverIn, s, i));
  });

  MonomialCollector out(f.delta);
  std::vector<VarIndex> factors;
  detail::for_each_large_classes(all, b + 1, std::min(p.theta, t), [&](const std::vector<NodeSet>& large, NodeSet rest) {
    const auto l = static_cast<std::uint32_t>(large.size());
    std::vector<std::uint32_t> owner(l, 0);
    auto pick_owner = [&](auto& self, std::uint32_t i) -> void {
      if (i == l) {
        std::vector<VarIndex> base;
        for (std::uint32_t j = 0; j < l; ++j) {
          for (NodeSet chunk : consecutive_chunks(large[j], b)) {
            base.push_back(f.legend.at(detail::key(VarKind::CoverIn, chunk, owner[j])));
          }
        }
        for_each_labelled_split(rest, p.theta, 2 * b, [&](const std::vector<NodeSet>& groups) {
          detail::for_each_budget(groups, t - l, [&](const std::vector<std::uint32_t>& budget) {
            factors = base;
            for (std::size_t g = 0; g < groups.size(); ++g) {
              if (groups[g]) factors.push_back(f.legend.at(detail::key(VarKind::CoverBudget, groups[g], budget[g])));
            }
            out.add(factors);
          });
        });
        return;
      }
      for (std::uint32_t q = 0; q < m; ++q) {
        owner[i] = q;
        self(self, i + 1);
      }
    };
    pick_owner(pick_owner, 0);
  });
  f.poly = std::move(out).build(f.legend.size());
  return f;
}

inline Assignment assign_set_cover(const Formulation& f, const SetFamily& fam) {
  detail::require_size(fam.n, f.params.get_n(), "universe size");
  detail::require_size(static_cast<std::uint32_t>(fam.sets.size()), f.params.get_m(), "family size");
  std::map<NodeSet, std::uint32_t> best;
  Assignment a(f.legend.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& k = f.legend.key(static_cast<VarIndex>(i));
    if (k.kind == VarKind::CoverIn) {
      a[i] = (k.fields[0] & ~fam.sets[k.fields[1]]) == 0;
      continue;
    }
    auto it = best.find(k.fields[0]);
    if (it == best.end()) it = best.emplace(k.fields[0], set_cover_min(fam, k.fields[0])).first;
    a[i] = it->second <= k.fields[1];
  }
  return a;
}

// ------------------------------------------------------------------ 3d-matching

inline Formulation formulate_3d_matching(const Params& p) {
  require_theta(p, 2);
  const std::uint32_t n = p.get_n();
  const std::uint32_t t = p.get_t();
  if (t > n) throw ParameterError("3d-matching needs t <= n");
  require_nodes(n, 8, "3d-matching");
  const auto b = static_cast<std::uint32_t>(ceil_div(n, p.theta));
  const NodeSet all = full_set(n);

  Formulation f;
  f.params = p;
  f.delta = p.theta;
  for (std::uint32_t size = 1; size <= b; ++size) {
    for_each_subset_sized(all, size, size, [&](NodeSet a) {
      for_each_subset_sized(all, size, size, [&](NodeSet bb) {
        for_each_subset_sized(all, size, size, [&](NodeSet c) { f.legend.add(detail::key(VarKind::Match3, a, bb, c)); });
      });
    });
  }

  MonomialCollector out(f.delta);
  std::vector<VarIndex> factors;
  for_each_subset_sized(all, t, t, [&](NodeSet ua) {
    for_each_labelled_split(ua, p.theta, b, [&](const std::vector<NodeSet>& ga) {
      std::vector<std::uint32_t> sizes;
      for (NodeSet s : ga) sizes.push_back(static_cast<std::uint32_t>(std::popcount(s)));
      for_each_subset_sized(all, t, t, [&](NodeSet ub) {
        detail::for_each_sized_split(ub, sizes, [&](const std::vector<NodeSet>& gb) {
          for_each_subset_sized(all, t, t, [&](NodeSet uc) {
            detail::for_each_sized_split(uc, sizes, [&](const std::vector<NodeSet>& gc) {
              factors.clear();
              for (std::size_t j = 0; j < ga.size(); ++j) {
                if (ga[j]) factors.push_back(f.legend.at(detail::key(VarKind::Match3, ga[j], gb[j], gc[j])));
              }
              out.add(factors);
            });
          });
        });
      });
    });
  });
  f.poly = std::move(out).build(f.legend.size());
  return f;
}

inline Assignment assign_3d_matching(const Formulation& f, const Hypergraph3& h) {
  detail::require_size(h.n, f.params.get_n(), "part size");
  Matching3dSolver solver(h);
  Assignment a(f.legend.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& k = f.legend.key(static_cast<VarIndex>(i));
    a[i] = solver.max_matching(k.fields[0], k.fields[1], k.fields[2]) ==
           static_cast<std::uint32_t>(std::popcount(k.fields[0]));
  }
  return a;
}

}  // namespace polyform
