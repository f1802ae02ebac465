#pragma once

#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "polyform/pipeline.hpp"
#include "polyform/solvers.hpp"
#include "polyform/splitters.hpp"

namespace polyform {

// Quick consistency sweeps shipped with the CLI. They compare library components with each other
// and with the library's reference solvers; the unit tests use independent brute force instead.

inline const std::vector<std::string>& selftest_scopes() {
  static const std::vector<std::string> scopes{"algebra",      "circuits", "splitters", "solvers",
                                               "formulations", "pipeline", "all"};
  return scopes;
}

namespace detail {

struct SelfCheck {
  std::string scope;
  std::string name;
  std::function<std::string(std::mt19937_64&)> run;  // empty string = pass
};

inline Graph selftest_graph(std::mt19937_64& rng, std::uint32_t n, bool directed, double p, std::int64_t wmax = 1) {
  Graph g(n, directed, wmax > 1);
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<std::int64_t> w(1, wmax);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = directed ? 0 : u + 1; v < n; ++v) {
      if (u != v && coin(rng)) g.add_edge(u, v, w(rng));
    }
  }
  return g;
}

inline SparsePolynomial selftest_poly(std::mt19937_64& rng, std::size_t nvars, std::uint32_t maxdeg,
                                      std::optional<PrimeModulus> mod) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<VarIndex> var(0, static_cast<VarIndex>(nvars - 1));
  std::uniform_int_distribution<std::uint32_t> deg(0, maxdeg);
  std::vector<std::pair<Monomial, Integer>> terms;
  for (int i = 0; i < 6; ++i) {
    std::vector<VarIndex> factors;
    for (std::uint32_t d = deg(rng); d > 0; --d) factors.push_back(var(rng));
    terms.emplace_back(Monomial::from_factors(factors), Integer(coeff(rng)));
  }
  return SparsePolynomial::from_terms(nvars, mod, std::move(terms), 2 * maxdeg);
}

inline ArithmeticCircuit selftest_circuit(std::mt19937_64& rng, std::size_t nvars, std::size_t gates) {
  CircuitBuilder b(nvars, PrimeModulus{10007, std::nullopt});
  std::vector<GateId> ids;
  for (VarIndex v = 0; v < nvars; ++v) ids.push_back(b.input(v));
  ids.push_back(b.constant(3));
  std::bernoulli_distribution mul(0.5);
  while (ids.size() < gates) {
    std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
    const GateId x = ids[pick(rng)];
    const GateId y = ids[pick(rng)];
    ids.push_back(mul(rng) ? b.mul(x, y) : b.add(x, y));
  }
  return std::move(b).build({ids.back()});
}

template <typename Oracle>
std::string formulation_sweep(std::mt19937_64& rng, const Params& p, int count, Oracle&& oracle,
                              const std::function<Instance(std::mt19937_64&)>& gen) {
  const Formulation f = formulate(p);
  for (int i = 0; i < count; ++i) {
    const Instance x = gen(rng);
    if (decide(f, assign(f, x)).yes != oracle(x)) return "mismatch on instance " + std::to_string(i);
  }
  return {};
}

inline std::vector<SelfCheck> selftest_checks() {
  std::vector<SelfCheck> checks;
  auto add = [&](std::string scope, std::string name, std::function<std::string(std::mt19937_64&)> run) {
    checks.push_back({std::move(scope), std::move(name), std::move(run)});
  };

  add("algebra", "prime-intervals", [](std::mt19937_64&) -> std::string {
    for (unsigned t = 0; t <= 40; ++t) {
      const auto p = find_prime_in_dyadic_interval(t).p;
      if (!is_prime(p) || p < (std::uint64_t{1} << (t + 1)) || p > (std::uint64_t{1} << (t + 2))) {
        return "bad prime for t=" + std::to_string(t);
      }
    }
    return {};
  });
  add("algebra", "cantor-injective", [](std::mt19937_64&) -> std::string {
    std::set<Integer> seen;
    for (std::uint64_t s = 0; s <= 300; ++s) {
      for (std::uint64_t k = 0; k <= 300; ++k) {
        if (!seen.insert(cantor_pair(s, k)).second) return "collision at " + std::to_string(s) + "," + std::to_string(k);
      }
    }
    return {};
  });
  add("algebra", "eval-homomorphism", [](std::mt19937_64& rng) -> std::string {
    std::uniform_int_distribution<std::int64_t> val(-4, 4);
    for (int i = 0; i < 50; ++i) {
      const auto a = selftest_poly(rng, 3, 3, std::nullopt);
      const auto b = selftest_poly(rng, 3, 3, std::nullopt);
      const std::vector<std::int64_t> x{val(rng), val(rng), val(rng)};
      const auto prod = poly_mul_truncated(a, b, 6);
      if (poly_eval(prod, std::span<const std::int64_t>(x)) !=
          poly_eval(a, std::span<const std::int64_t>(x)) * poly_eval(b, std::span<const std::int64_t>(x))) {
        return "product evaluation differs";
      }
    }
    return {};
  });

  add("circuits", "sop-verify", [](std::mt19937_64& rng) -> std::string {
    const PrimeModulus p{10007, std::nullopt};
    for (int i = 0; i < 30; ++i) {
      const auto poly = selftest_poly(rng, 4, 3, p);
      const auto c = sum_of_products_circuit(poly);
      if (!verify_circuit(c, poly, 6, p)) return "canonical circuit rejected";
      const auto bumped = poly_add(poly, SparsePolynomial::constant(4, p, 1));
      if (verify_circuit(c, bumped, 6, p)) return "perturbed target accepted";
    }
    return {};
  });
  add("circuits", "homogenize", [](std::mt19937_64& rng) -> std::string {
    for (int i = 0; i < 40; ++i) {
      const auto c = selftest_circuit(rng, 3, 20);
      const std::uint32_t delta = static_cast<std::uint32_t>(i % 5);
      const auto h = homogenize(c, delta);
      const auto parts = expand(h.base, delta);
      const auto whole = expand(c, delta).front();
      for (std::uint32_t d = 0; d <= delta; ++d) {
        if (parts[d].terms() != whole.homogeneous_part(d).terms()) return "component " + std::to_string(d) + " differs";
      }
    }
    return {};
  });

  add("splitters", "code", [](std::mt19937_64&) -> std::string {
    for (auto [n, k] : {std::pair{20U, 3U}, {50U, 3U}, {30U, 4U}}) {
      if (!verify_splitter(build_code_splitter(n, k), SplitterKind::Injective)) return "code splitter not injective";
    }
    return {};
  });
  add("splitters", "interval", [](std::mt19937_64&) -> std::string {
    for (auto [n, k, l] : {std::tuple{6U, 4U, 2U}, {8U, 4U, 4U}}) {
      if (!verify_splitter(build_interval_splitter(n, k, l), SplitterKind::EvenSplit)) return "interval splitter uneven";
    }
    return {};
  });
  add("splitters", "greedy", [](std::mt19937_64&) -> std::string {
    for (auto [n, k, c] : {std::tuple{8U, 3U, 2U}, {10U, 3U, 2U}}) {
      const auto h = build_greedy_splitter(n, k, c);
      if (!verify_splitter(h, SplitterKind::Injective)) return "greedy splitter not injective";
      if (h.size() > greedy_size_bound(n, k, c)) return "greedy splitter above its size bound";
    }
    return {};
  });
  add("splitters", "compose", [](std::mt19937_64&) -> std::string {
    for (auto [n, k, c] : {std::tuple{10U, 3U, 2U}, {12U, 4U, 2U}}) {
      if (!verify_splitter(compose_splitter(n, k, c), SplitterKind::Injective)) return "composed splitter not injective";
    }
    return {};
  });

  add("solvers", "tree-partition", [](std::mt19937_64& rng) -> std::string {
    for (int i = 0; i < 200; ++i) {
      const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 39);
      const std::uint32_t theta = 2 + static_cast<std::uint32_t>(rng() % 5);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
      for (std::uint32_t v = 1; v < n; ++v) edges.emplace_back(static_cast<std::uint32_t>(rng() % v), v);
      const NodeSet marked = rng() & full_set(n);
      const auto blocks = tree_edge_partition(RootedTree::from_edges(n, edges), marked, theta);
      std::vector<NodeSet> sets;
      std::size_t total = 0;
      for (const auto& b : blocks) {
        total += b.edges.size();
        sets.push_back(b.nodes);
      }
      if (blocks.size() > theta || total != n - 1 || !subset_graph(sets).is_tree()) return "bad partition";
    }
    return {};
  });
  add("solvers", "steiner-pairs", [](std::mt19937_64& rng) -> std::string {
    for (int i = 0; i < 50; ++i) {
      const Graph g = selftest_graph(rng, 6, false, 0.5, 5);
      // Two terminals: the optimum is a shortest path (Bellman-Ford relaxation).
      std::vector<std::int64_t> dist(6, std::numeric_limits<std::int64_t>::max() / 4);
      dist[0] = 0;
      for (int round = 0; round < 6; ++round) {
        for (const Edge& e : g.edges()) {
          dist[e.v] = std::min(dist[e.v], dist[e.u] + e.w);
          dist[e.u] = std::min(dist[e.u], dist[e.v] + e.w);
        }
      }
      const auto best = steiner_tree_min(g, 0b100001);
      const bool reachable = dist[5] < std::numeric_limits<std::int64_t>::max() / 4;
      if (best.has_value() != reachable || (best && *best != dist[5])) return "two-terminal optimum differs";
    }
    return {};
  });

  add("formulations", "ham-path", [](std::mt19937_64& rng) {
    Params p;
    p.problem = Problem::HamPath;
    p.n = 5;
    p.theta = 2;
    return formulation_sweep(
        rng, p, 100, [](const Instance& x) { return hamiltonian_path(std::get<Graph>(x)); },
        [](std::mt19937_64& r) { return Instance{selftest_graph(r, 5, true, 0.35)}; });
  });
  add("formulations", "independent-set", [](std::mt19937_64& rng) {
    Params p;
    p.problem = Problem::IndependentSet;
    p.n = 6;
    p.t = 3;
    p.theta = 3;
    return formulation_sweep(
        rng, p, 100, [](const Instance& x) { return max_independent_set(std::get<Graph>(x)) >= 3; },
        [](std::mt19937_64& r) { return Instance{selftest_graph(r, 6, false, 0.4)}; });
  });
  add("formulations", "graph-coloring", [](std::mt19937_64& rng) {
    Params p;
    p.problem = Problem::GraphColoring;
    p.n = 5;
    p.t = 3;
    p.theta = 2;
    return formulation_sweep(
        rng, p, 100, [](const Instance& x) { return chromatic_at_most(std::get<Graph>(x), 3); },
        [](std::mt19937_64& r) { return Instance{selftest_graph(r, 5, false, 0.6)}; });
  });
  add("formulations", "k-path", [](std::mt19937_64& rng) {
    Params p;
    p.problem = Problem::KPath;
    p.n = 7;
    p.k = 4;
    p.theta = 2;
    return formulation_sweep(
        rng, p, 40, [](const Instance& x) { return has_path_with_nodes(std::get<Graph>(x), 4); },
        [](std::mt19937_64& r) { return Instance{selftest_graph(r, 7, false, 0.2)}; });
  });

  add("pipeline", "ham-path", [](std::mt19937_64& rng) -> std::string {
    PipelineOptions opt;
    opt.params.problem = Problem::HamPath;
    opt.params.theta = 3;
    std::vector<Instance> xs;
    for (int i = 0; i < 50; ++i) xs.emplace_back(selftest_graph(rng, 6, true, 0.35));
    const auto r = run_pipeline(opt, xs, {});
    if (!r.verified) return "canonical circuit rejected";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (r.decisions[i].yes != hamiltonian_path(std::get<Graph>(xs[i]))) return "decision " + std::to_string(i);
    }
    return {};
  });
  add("pipeline", "wrong-candidate", [](std::mt19937_64&) -> std::string {
    PipelineOptions opt;
    opt.params.problem = Problem::HamPath;
    opt.params.theta = 2;
    opt.params.n = 4;
    CircuitBuilder b(36, std::nullopt);
    const GateId one = b.constant(1);
    opt.candidate = std::move(b).build({one});
    const auto r = run_pipeline(opt, {}, {});
    if (r.verified || !r.decisions.empty()) return "wrong candidate accepted";
    return {};
  });
  return checks;
}

}  // namespace detail

/// Runs every check in `scope` ("all" for everything), printing one line per check and a summary.
/// Returns false if any check fails; throws ParameterError for an unknown scope.
inline bool run_selftest(const std::string& scope, std::uint64_t seed, std::ostream& out) {
  const auto& scopes = selftest_scopes();
  if (std::find(scopes.begin(), scopes.end(), scope) == scopes.end()) {
    throw ParameterError("unknown selftest scope '" + scope + "'");
  }
  std::size_t passed = 0;
  std::size_t failed = 0;
  for (const auto& c : detail::selftest_checks()) {
    if (scope != "all" && c.scope != scope) continue;
    std::mt19937_64 rng(seed);
    std::string problem;
    try {
      problem = c.run(rng);
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    out << "selftest " << c.scope << ' ' << c.name << ' ' << (problem.empty() ? "PASS" : "FAIL");
    if (!problem.empty()) out << ' ' << problem;
    out << '\n';
    (problem.empty() ? passed : failed) += 1;
  }
  out << "selftest summary scope=" << scope << " passed=" << passed << " failed=" << failed << '\n';
  return failed == 0;
}

}  // namespace polyform
