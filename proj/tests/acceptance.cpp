// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "formulation_harness.hpp"
#include "oracles.hpp"
#include "polyform/pipeline.hpp"
#include "polyform/splitters.hpp"
#include "support.hpp"

using namespace polyform;
namespace orc = polyform::oracle;
using harness::Checked;

namespace {

struct Tally {
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  std::size_t positives = 0;  // oracle yes-instances, for formulation criteria
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok) {
      ++mismatches;
      if (notes.size() < 5) notes.push_back(what);
    }
  }
};

// Bookkeeping for criterion 7, accumulated while criteria 1-6 run.
struct Bookkeeping {
  std::size_t formulations = 0;
  std::size_t evaluations = 0;
  std::vector<std::string> violations;
} g_books;

Params make(Problem pr, std::uint32_t theta) {
  Params p;
  p.problem = pr;
  p.theta = theta;
  return p;
}

Checked checked(const Params& p) {
  Checked c(formulate(p));
  ++g_books.formulations;
  for (const auto& v : c.static_violations()) g_books.violations.push_back(std::string(problem_tag(p.problem)) + ": " + v);
  return c;
}

void check(Tally& t, const Checked& c, const Instance& x, bool oracle, const std::string& label) {
  std::vector<std::string> v;
  const bool got = c.decide_on(x, v);
  ++g_books.evaluations;
  for (auto& s : v) g_books.violations.push_back(label + ": " + s);
  t.positives += oracle;
  t.expect(got == oracle, label);
}

int g_failures = 0;

void report(int id, const std::string& title, double limit_s, const std::function<Tally()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Tally t;
  std::string error;
  try {
    t = body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = error.empty() && t.mismatches == 0 && t.cases > 0 && secs < limit_s;
  g_failures += !ok;
  std::cout << "criterion " << std::setw(2) << id << ' ' << (ok ? "PASS" : "FAIL") << "  " << title
            << "  [cases=" << t.cases << " mismatches=" << t.mismatches;
  if (t.positives) std::cout << " yes=" << t.positives;
  std::cout << " time=" << std::fixed
            << std::setprecision(2) << secs << "s limit=" << limit_s << "s]";
  if (!error.empty()) std::cout << " error: " << error;
  for (const auto& n : t.notes) std::cout << "\n      " << n;
  std::cout << std::endl;
}

// ------------------------------------------------------------------ 1-6: formulations

Tally criterion_ham_path() {
  Tally t;
  auto p = make(Problem::HamPath, 2);
  p.n = 4;
  const Checked c4 = checked(p);
  for (std::uint64_t mask = 0; mask < (1U << 12); ++mask) {
    const Graph g = orc::directed_graph_from_mask(4, mask);
    check(t, c4, g, orc::ham_path(g), "4-node mask " + std::to_string(mask));
  }
  p.theta = 3;
  p.n = 6;
  const Checked c6 = checked(p);
  std::mt19937_64 rng(101);
  for (int i = 0; i < 500; ++i) {
    const Graph g = orc::random_graph(rng, 6, true, 0.2 + 0.3 * (i % 3) / 2.0);
    check(t, c6, g, orc::ham_path(g), "6-node graph " + std::to_string(i));
  }
  return t;
}

Tally criterion_independent_set() {
  Tally t;
  for (Problem pr : {Problem::IndependentSet, Problem::Clique, Problem::VertexCover}) {
    for (std::uint32_t target = 0; target <= 5; ++target) {
      auto p = make(pr, 2);
      p.n = 5;
      p.t = target;
      const Checked c = checked(p);
      for (std::uint64_t mask = 0; mask < (1U << 10); ++mask) {
        const Graph g = orc::undirected_graph_from_mask(5, mask);
        bool want = false;
        if (pr == Problem::IndependentSet) want = orc::max_independent(g) >= target;
        if (pr == Problem::Clique) want = orc::max_clique(g) >= target;
        if (pr == Problem::VertexCover) want = orc::min_vertex_cover(g) <= target;
        check(t, c, g, want, std::string(problem_tag(pr)) + " t=" + std::to_string(target) + " mask " + std::to_string(mask));
      }
    }
  }
  return t;
}

Tally criterion_max_sat() {
  Tally t;
  std::mt19937_64 rng(103);
  std::map<std::tuple<Problem, std::uint32_t, std::uint32_t>, Checked> cache;
  auto get = [&](Problem pr, std::uint32_t m, std::uint32_t target) -> const Checked& {
    auto key = std::tuple{pr, m, target};
    auto it = cache.find(key);
    if (it == cache.end()) {
      auto p = make(pr, 3);
      p.n = 6;
      p.m = m;
      p.k = 2;
      if (pr == Problem::MaxKSat) p.t = target;
      it = cache.emplace(key, checked(p)).first;
    }
    return it->second;
  };
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t m = static_cast<std::uint32_t>(rng() % 9);
    const CnfFormula cnf = orc::random_cnf(rng, 6, m, 2);
    const auto best = orc::max_satisfied(cnf);
    for (std::uint32_t target = 0; target <= m; ++target) {
      check(t, get(Problem::MaxKSat, m, target), cnf, best >= target,
            "cnf " + std::to_string(i) + " t=" + std::to_string(target));
    }
    check(t, get(Problem::KSat, m, m), cnf, best == m, "ksat cnf " + std::to_string(i));
  }
  return t;
}

Tally criterion_coloring() {
  Tally t;
  for (std::uint32_t target = 1; target <= 4; ++target) {
    auto p = make(Problem::GraphColoring, 2);
    p.n = 4;
    p.t = target;
    const Checked c = checked(p);
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
      const Graph g = orc::undirected_graph_from_mask(4, mask);
      check(t, c, g, orc::chromatic(g) <= target, "t=" + std::to_string(target) + " mask " + std::to_string(mask));
    }
  }
  return t;
}

Tally criterion_cover_and_matching() {
  Tally t;
  std::mt19937_64 rng(105);
  std::map<std::pair<std::uint32_t, std::uint32_t>, Checked> cover;
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng() % 8);
    const SetFamily fam = orc::random_family(rng, 6, m, 0.2 + 0.05 * (i % 5));
    const auto best = orc::min_cover(fam, 0b111111);
    for (std::uint32_t target = 0; target <= 4; ++target) {
      auto it = cover.find({m, target});
      if (it == cover.end()) {
        auto p = make(Problem::SetCover, 2);
        p.n = 6;
        p.m = m;
        p.t = target;
        it = cover.emplace(std::pair{m, target}, checked(p)).first;
      }
      check(t, it->second, fam, best <= target, "cover " + std::to_string(i) + " t=" + std::to_string(target));
    }
  }
  std::vector<Checked> matching;
  for (std::uint32_t target = 0; target <= 3; ++target) {
    auto p = make(Problem::Matching3d, 2);
    p.n = 3;
    p.t = target;
    matching.push_back(checked(p));
  }
  for (int i = 0; i < 200; ++i) {
    const Hypergraph3 h = orc::random_hyper3(rng, 3, 1 + static_cast<std::uint32_t>(rng() % 8));
    const auto best = orc::max_matching3d(h, 7, 7, 7);
    for (std::uint32_t target = 0; target <= 3; ++target) {
      check(t, matching[target], h, best >= target, "3dm " + std::to_string(i) + " t=" + std::to_string(target));
    }
  }
  return t;
}

Tally criterion_parameterized() {
  Tally t;
  std::mt19937_64 rng(107);

  for (std::uint32_t k = 0; k <= 3; ++k) {
    auto p = make(Problem::KVertexCover, 2);
    p.n = 6;
    p.k = k;
    const Checked c = checked(p);
    for (std::uint64_t mask = 0; mask < (1U << 15); ++mask) {
      const Graph g = orc::undirected_graph_from_mask(6, mask);
      check(t, c, g, orc::min_vertex_cover(g) <= k, "k-vc k=" + std::to_string(k) + " mask " + std::to_string(mask));
    }
  }

  for (std::uint32_t n : {4U, 6U}) {
    for (std::uint32_t k = 0; k <= 3; ++k) {
      auto p = make(Problem::KSetSplitting, 2);
      p.n = n;
      p.m = 6;
      p.k = k;
      const Checked c = checked(p);
      for (int i = 0; i < 60; ++i) {
        const SetFamily fam = orc::random_family(rng, n, 6, 0.3);
        check(t, c, fam, orc::max_split(fam) >= k, "splitting n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
    }
  }

  {
    auto p = make(Problem::KSteinerTree, 3);
    p.n = 7;
    p.k = 3;
    p.w = 8;
    p.t = 0;
    Checked c = checked(p);
    for (int i = 0; i < 60; ++i) {
      Graph g = orc::random_graph(rng, 7, false, 0.35, true, 3);
      std::vector<std::uint32_t> nodes{0, 1, 2, 3, 4, 5, 6};
      std::shuffle(nodes.begin(), nodes.end(), rng);
      g.terminals = bit(nodes[0]) | bit(nodes[1]) | bit(nodes[2]);
      const auto best = orc::steiner(g, g.terminals);
      for (std::uint32_t budget = 0; budget <= 8; ++budget) {
        c.set_t(budget);
        check(t, c, g, best && *best <= budget, "steiner " + std::to_string(i) + " t=" + std::to_string(budget));
      }
    }
  }

  for (Problem pr : {Problem::KInternalSpanningTree, Problem::KLeafSpanningTree}) {
    for (std::uint32_t n : {5U, 6U}) {
      for (std::uint32_t k = 0; k <= 3; ++k) {
        auto p = make(pr, 3);
        p.n = n;
        p.k = k;
        const Checked c = checked(p);
        for (int i = 0; i < 60; ++i) {
          const Graph g = orc::random_connected_graph(rng, n, 0.3 + 0.1 * (i % 4));
          const auto ex = orc::spanning_trees(g);
          const bool want = pr == Problem::KInternalSpanningTree ? ex.max_internal >= k : ex.max_leaves >= k;
          check(t, c, g, want, std::string(problem_tag(pr)) + " n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
      }
    }
  }

  for (std::uint32_t k = 0; k <= 3; ++k) {
    auto p = make(Problem::KNonblocker, 2);
    p.n = 6;
    p.k = k;
    const Checked c = checked(p);
    for (int i = 0; i < 200; ++i) {
      const Graph g = orc::random_graph(rng, 6, false, 0.1 + 0.05 * (i % 4));
      check(t, c, g, orc::max_nonblocker(g) >= k, "nonblocker k=" + std::to_string(k));
    }
  }

  for (std::uint32_t k = 1; k <= 4; ++k) {
    auto p = make(Problem::KPath, 2);
    p.n = 10;
    p.k = k;
    const Checked c = checked(p);
    for (int i = 0; i < 50; ++i) {
      const bool directed = i % 2 == 1;
      const Graph g = orc::random_graph(rng, 10, directed, directed ? 0.08 : 0.1);
      check(t, c, g, orc::k_path(g, k), "k-path k=" + std::to_string(k) + " graph " + std::to_string(i));
    }
  }
  return t;
}

Tally criterion_bookkeeping() {
  Tally t;
  t.cases = g_books.formulations + g_books.evaluations;
  t.mismatches = g_books.violations.size();
  for (std::size_t i = 0; i < std::min<std::size_t>(5, g_books.violations.size()); ++i) {
    t.notes.push_back(g_books.violations[i]);
  }
  return t;
}

// ------------------------------------------------------------------ 8: splitters

bool independently_splits(const SplitterFamily& h, bool injective) {
  std::vector<std::uint32_t> subset(h.k);
  std::iota(subset.begin(), subset.end(), 0U);
  if (h.k > h.n) return true;
  while (true) {
    bool hit = false;
    for (const auto& f : h.members) {
      std::vector<std::uint32_t> count(h.range, 0);
      for (auto x : subset) ++count[f(x)];
      bool ok = true;
      for (auto c : count) {
        if (injective) ok = ok && c <= 1;
        else ok = ok && c >= h.k / h.range && c <= (h.k + h.range - 1) / h.range;
      }
      if (ok) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
    int i = static_cast<int>(h.k) - 1;
    while (i >= 0 && subset[i] == h.n - h.k + i) --i;
    if (i < 0) return true;
    ++subset[i];
    for (std::uint32_t j = i + 1; j < h.k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

Tally criterion_splitters() {
  Tally t;
  for (auto [n, k] : {std::pair{20U, 3U}, {50U, 3U}, {30U, 4U}}) {
    const auto h = build_code_splitter(n, k);
    const std::string label = "code (" + std::to_string(n) + "," + std::to_string(k) + ")";
    t.expect(verify_splitter(h, SplitterKind::Injective).ok, label);
    t.expect(independently_splits(h, true), label + " brute force");
  }
  for (auto [n, k, l] : {std::tuple{6U, 4U, 2U}, {8U, 4U, 4U}}) {
    const auto h = build_interval_splitter(n, k, l);
    const std::string label = "interval (" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(l) + ")";
    t.expect(verify_splitter(h, SplitterKind::EvenSplit).ok, label);
    t.expect(independently_splits(h, false), label + " brute force");
  }
  for (auto [n, k, c] : {std::tuple{8U, 3U, 2U}, {10U, 3U, 2U}}) {
    const auto h = build_greedy_splitter(n, k, c);
    const std::string label = "greedy (" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(c) + ")";
    t.expect(verify_splitter(h, SplitterKind::Injective).ok, label);
    t.expect(independently_splits(h, true), label + " brute force");
    const double bound = std::ceil(std::exp(static_cast<double>(k) / c) * k * std::log(static_cast<double>(n))) + 1;
    t.expect(static_cast<double>(h.size()) <= bound, label + " size " + std::to_string(h.size()));
  }
  for (auto [n, k, c] : {std::tuple{10U, 3U, 2U}, {12U, 4U, 2U}}) {
    const auto h = compose_splitter(n, k, c);
    const std::string label = "compose (" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(c) + ")";
    t.expect(verify_splitter(h, SplitterKind::Injective).ok, label);
    t.expect(independently_splits(h, true), label + " brute force");
    const std::uint32_t parts = static_cast<std::uint32_t>(std::max(1.0, std::ceil(std::log2(static_cast<double>(k)))));
    const std::uint32_t part = (k + parts - 1) / parts;
    const auto a = build_code_splitter(n, k);
    const auto b = build_interval_splitter(a.range, k, parts);
    const auto g = build_greedy_splitter(a.range, part, c);
    std::uint64_t expect = a.size() * b.size();
    for (std::uint32_t i = 0; i < parts; ++i) expect *= g.size();
    t.expect(h.size() == expect, label + " size " + std::to_string(h.size()) + " vs " + std::to_string(expect));
  }
  return t;
}

// ------------------------------------------------------------------ 9-10: circuits

using namespace polyform::testing;
const PrimeModulus kBig{1000003, std::nullopt};

Tally criterion_homogenization() {
  Tally t;
  std::mt19937_64 rng(109);
  for (int round = 0; round < 100; ++round) {
    const auto c = random_circuit(rng, 3, 30, 8, kBig);
    const std::uint32_t delta = static_cast<std::uint32_t>(round % 5);
    const auto h = homogenize(c, delta);
    const std::string label = "circuit " + std::to_string(round);
    std::vector<GateId> all(h.base.gate_count());
    std::iota(all.begin(), all.end(), GateId{0});
    const auto polys = naive_expand(ArithmeticCircuit(h.base.nvars(), h.base.modulus(), h.base.gates(), all));
    bool homogeneous = true;
    for (GateId g = 0; g < all.size(); ++g) {
      for (const auto& [e, coeff] : polys[g]) homogeneous = homogeneous && exp_degree(e) == h.degree_of[g];
    }
    t.expect(homogeneous, label + " gate homogeneity");
    NaivePoly sum;
    for (GateId o : h.component_outputs) sum = naive_add(sum, polys[o], kBig.p);
    t.expect(sum == naive_truncate(naive_expand(c).front(), delta), label + " component sum");
    t.expect(h.base.size() <= 9 * (delta + 1) * (delta + 1) * c.size(), label + " size bound");
  }
  return t;
}

ArithmeticCircuit mutate(const ArithmeticCircuit& c, std::mt19937_64& rng) {
  auto gates = c.gates();
  std::uniform_int_distribution<std::size_t> pick(0, gates.size() - 1);
  const std::size_t g = pick(rng);
  Gate& x = gates[g];
  switch (x.kind) {
    case GateKind::Add:
    case GateKind::Mul:
      if (rng() % 2 == 0 || g == 0) {
        x.kind = x.kind == GateKind::Add ? GateKind::Mul : GateKind::Add;
      } else {
        std::uniform_int_distribution<GateId> earlier(0, static_cast<GateId>(g - 1));
        (rng() % 2 ? x.lhs : x.rhs) = earlier(rng);
      }
      break;
    case GateKind::Input:
      x.var = static_cast<VarIndex>((x.var + 1 + rng() % (c.nvars() - 1)) % c.nvars());
      break;
    case GateKind::Const:
      x.value += 1 + static_cast<std::int64_t>(rng() % 5);
      break;
  }
  return ArithmeticCircuit(c.nvars(), c.modulus(), std::move(gates), c.outputs());
}

Tally criterion_mutation_soundness() {
  Tally t;
  std::mt19937_64 rng(111);
  std::size_t different = 0;
  for (int pair = 0; pair < 50; ++pair) {
    ArithmeticCircuit c;
    SparsePolynomial target;
    std::uint32_t delta = 0;
    if (pair % 2 == 0) {
      target = random_polynomial(rng, 4, 3, 8, kBig);
      c = sum_of_products_circuit(target);
      delta = target.degree();
    } else {
      c = random_circuit(rng, 4, 25, 4, kBig);
      target = naive_expand_poly(c);
      delta = 4;
    }
    if (!verify_circuit(c, target, delta, kBig)) {
      t.expect(false, "pair " + std::to_string(pair) + " not accepted");
      continue;
    }
    for (int m = 0; m < 100; ++m) {
      const ArithmeticCircuit mutant = mutate(c, rng);
      const bool same = naive_expand(mutant).front() == to_naive(target);
      different += !same;
      const bool accepted = verify_circuit(mutant, target, delta, kBig).accepted;
      t.expect(accepted == same, "pair " + std::to_string(pair) + " mutant " + std::to_string(m) +
                                     (same ? " equivalent but rejected" : " different but accepted"));
    }
  }
  if (different == 0) t.expect(false, "no semantically different mutants generated");
  return t;
}

// ------------------------------------------------------------------ 11-14

Tally criterion_prime_intervals() {
  Tally t;
  for (unsigned e = 0; e <= 40; ++e) {
    const std::uint64_t p = find_prime_in_dyadic_interval(e).p;
    bool prime = p >= 2;
    for (std::uint64_t d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
    t.expect(prime && p >= (std::uint64_t{1} << (e + 1)) && p <= (std::uint64_t{1} << (e + 2)),
             "t=" + std::to_string(e) + " p=" + std::to_string(p));
  }
  return t;
}

Tally criterion_pipeline() {
  Tally t;
  std::mt19937_64 rng(113);
  std::vector<Instance> xs;
  for (int i = 0; i < 500; ++i) xs.emplace_back(orc::random_graph(rng, 6, true, 0.2 + 0.3 * (i % 3) / 2.0));
  PipelineOptions opt;
  opt.params.problem = Problem::HamPath;
  opt.params.theta = 3;
  const PipelineReport r = run_pipeline(opt, xs, {});
  t.expect(r.verified, "verification rejected the canonical circuit");
  t.expect(r.decisions.size() == xs.size(), "decision count");
  if (!r.verified || r.decisions.size() != xs.size()) return t;
  const Formulation f = formulate(r.params);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Graph& g = std::get<Graph>(xs[i]);
    t.expect(r.decisions[i].yes == orc::ham_path(g), "graph " + std::to_string(i) + " decision");
    const Integer value = decide(f, assign(f, g)).value;
    t.expect(Integer(2) * value < Integer(r.p), "graph " + std::to_string(i) + " value " + value.str());
  }
  return t;
}

Tally criterion_tree_partition() {
  Tally t;
  std::mt19937_64 rng(115);
  for (int it = 0; it < 1000; ++it) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 39);
    const std::uint32_t theta = 2 + static_cast<std::uint32_t>(rng() % 5);
    const auto edges = orc::random_tree(rng, n);
    const auto tree = RootedTree::from_edges(n, edges, static_cast<std::uint32_t>(rng() % n));
    const NodeSet marked = rng() & full_set(n);
    const auto k = static_cast<std::uint32_t>(std::popcount(marked));
    const auto blocks = tree_edge_partition(tree, marked, theta);
    const std::string label = "tree " + std::to_string(it);

    t.expect(blocks.size() <= theta, label + " block count");
    std::multiset<std::pair<std::uint32_t, std::uint32_t>> seen;
    std::vector<NodeSet> sets;
    bool blocks_ok = true;
    for (const auto& b : blocks) {
      // Connected: union-find over the block's edges leaves one component spanning its nodes.
      std::map<std::uint32_t, std::uint32_t> parent;
      std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
        if (!parent.count(x)) parent[x] = x;
        return parent[x] == x ? x : parent[x] = find(parent[x]);
      };
      NodeSet touched = 0;
      for (const auto& e : b.edges) {
        seen.insert(std::minmax(e.first, e.second));
        parent[find(e.first)] = find(e.second);
        touched |= bit(e.first) | bit(e.second);
      }
      std::set<std::uint32_t> roots;
      for (auto x : orc::elements(touched)) roots.insert(find(x));
      blocks_ok = blocks_ok && !b.edges.empty() && roots.size() == 1 && touched == b.nodes;
      // |M_i| <= 2k/(theta-1) + 2, compared exactly in integers.
      const auto mi = static_cast<std::uint32_t>(std::popcount(b.nodes & marked));
      blocks_ok = blocks_ok && mi * (theta - 1) <= 2 * k + 2 * (theta - 1);
      sets.push_back(b.nodes);
    }
    std::multiset<std::pair<std::uint32_t, std::uint32_t>> all;
    for (auto [a, b] : edges) all.insert(std::minmax(a, b));
    t.expect(blocks_ok, label + " block shape");
    t.expect(seen == all, label + " blocks partition the edges");
    t.expect(subset_graph(sets).is_tree(), label + " subset graph");
  }
  return t;
}

Tally criterion_cantor() {
  Tally t;
  std::set<Integer> seen;
  for (std::uint64_t s = 0; s <= 300; ++s) {
    for (std::uint64_t k = 0; k <= 300; ++k) {
      const Integer v = cantor_pair(s, k);
      t.expect(v == Integer((s + k) * (s + k + 1) / 2 + k), "formula at " + std::to_string(s) + "," + std::to_string(k));
      t.expect(seen.insert(v).second, "collision at " + std::to_string(s) + "," + std::to_string(k));
    }
  }
  return t;
}

}  // namespace

int main() {
  report(1, "Hamiltonian path: all 4-node digraphs (theta=2), 500 random 6-node (theta=3)", 120, criterion_ham_path);
  report(2, "Independent set / clique / vertex cover: all 5-node graphs, all t", 120, criterion_independent_set);
  report(3, "MAX-2-SAT and 2-SAT: 200 random formulas, n=6, m<=8, theta=3, all t", 120, criterion_max_sat);
  report(4, "Graph coloring: all 4-node graphs, t in [1,4]", 60, criterion_coloring);
  report(5, "Set cover and 3d-matching: 200 random instances each", 120, criterion_cover_and_matching);
  report(6, "Parameterized suite (k-VC, splitting, Steiner, spanning, nonblocker, k-path)", 300, criterion_parameterized);
  report(7, "Degree and value bookkeeping over criteria 1-6", 1, criterion_bookkeeping);
  report(8, "Splitter constructions verify and meet their size formulas", 180, criterion_splitters);
  report(9, "Homogenization: 100 random circuits", 60, criterion_homogenization);
  report(10, "Verifier soundness: 50 pairs x 100 single-gate mutants", 120, criterion_mutation_soundness);
  report(11, "Dyadic prime intervals for t in [0,40]", 1, criterion_prime_intervals);
  report(12, "End-to-end pipeline: ham-path theta=3 on 500 random 6-node graphs", 180, criterion_pipeline);
  report(13, "Tree partition: 1000 random trees, theta in [2,6]", 60, criterion_tree_partition);
  report(14, "cantor_pair injective on s,k <= 300", 1, criterion_cantor);
  std::cout << (g_failures == 0 ? "acceptance: all criteria passed" : "acceptance: " + std::to_string(g_failures) + " criteria failed")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
