#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <random>
#include <sstream>

#include "formulation_harness.hpp"
#include "oracles.hpp"
#include "polyform/formulations.hpp"

using namespace polyform;
namespace orc = polyform::oracle;
using harness::Checked;

namespace {

Params make(Problem pr, std::uint32_t theta) {
  Params p;
  p.problem = pr;
  p.theta = theta;
  return p;
}

// Runs x through the formulation and expects the oracle's answer plus clean bookkeeping.
void expect_decision(const Checked& c, const Instance& x, bool oracle, const std::string& label) {
  std::vector<std::string> violations;
  EXPECT_EQ(c.decide_on(x, violations), oracle) << label;
  for (const auto& v : violations) ADD_FAILURE() << label << ": " << v;
}

void expect_static_ok(const Checked& c) {
  for (const auto& v : c.static_violations()) ADD_FAILURE() << v;
}

Graph path_graph(std::uint32_t n, bool directed) {
  Graph g(n, directed);
  for (std::uint32_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph complete_graph(std::uint32_t n) {
  Graph g(n, false);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

}  // namespace

// ------------------------------------------------------------------ shared machinery

TEST(FormulationCore, ParamIndex) {
  EXPECT_EQ(param_index(5, 2), Integer(30));
  for (std::uint64_t s = 0; s < 20; ++s) EXPECT_EQ(param_index(s, 0), Integer(s * (s + 1) / 2));
}

TEST(FormulationCore, ProblemTagsRoundTrip) {
  for (const auto& [p, tag] : kProblemTags) EXPECT_EQ(parse_problem(tag), p);
  EXPECT_FALSE(parse_problem("ham-cycle").has_value());
}

TEST(FormulationCore, LegendIsBijective) {
  auto p = make(Problem::GraphColoring, 2);
  p.n = 5;
  p.t = 3;
  const Formulation f = formulate(p);
  for (std::size_t i = 0; i < f.s(); ++i) EXPECT_EQ(f.legend.at(f.legend.key(static_cast<VarIndex>(i))), i);
  EXPECT_THROW(static_cast<void>(Legend().at(VariableKey{})), std::logic_error);
}

TEST(FormulationCore, BooleanEvaluationMatchesIntegerEvaluation) {
  auto p = make(Problem::HamPath, 3);
  p.n = 5;
  const Formulation f = formulate(p);
  std::mt19937_64 rng(11);
  std::bernoulli_distribution coin(0.8);
  for (int trial = 0; trial < 50; ++trial) {
    Assignment a(f.s());
    std::vector<std::int64_t> point(f.s());
    for (std::size_t i = 0; i < a.size(); ++i) point[i] = a[i] = coin(rng);
    EXPECT_EQ(evaluate_boolean(f.poly, a), poly_eval(f.poly, std::span<const std::int64_t>(point)));
  }
  EXPECT_THROW(evaluate_boolean(f.poly, Assignment(f.s() + 1)), ArityError);
}

TEST(FormulationCore, DecideRejectsNonBinaryEntries) {
  auto p = make(Problem::IndependentSet, 2);
  p.n = 3;
  p.t = 1;
  const Formulation f = formulate(p);
  Assignment a(f.s(), 0);
  a[0] = 2;
  EXPECT_THROW(decide(f, a), ParameterError);
}

TEST(FormulationCore, MissingParametersAreParameterErrors) {
  EXPECT_THROW(formulate(make(Problem::HamPath, 2)), ParameterError);
  auto p = make(Problem::IndependentSet, 2);
  p.n = 4;
  EXPECT_THROW(formulate(p), ParameterError);
}

TEST(FormulationCore, WrongInstanceTypeIsRejected) {
  auto p = make(Problem::IndependentSet, 2);
  p.n = 3;
  p.t = 1;
  const Formulation f = formulate(p);
  EXPECT_THROW(assign(f, Instance{SetFamily{3, {}}}), ParameterError);
  EXPECT_THROW(assign(f, Instance{Graph(4, false)}), ParameterError);
}

TEST(FormulationCore, CompleteParamsFillsSizes) {
  Graph g(5, false);
  g.terminals = 0b10101;
  const Params p = complete_params(make(Problem::KSteinerTree, 3), g);
  EXPECT_EQ(p.n, 5U);
  EXPECT_EQ(p.k, 3U);
  CnfFormula cnf{4, {{1, -2}, {3}}};
  const Params q = complete_params(make(Problem::MaxKSat, 2), cnf);
  EXPECT_EQ(q.n, 4U);
  EXPECT_EQ(q.m, 2U);
  EXPECT_EQ(q.k, 2U);
}

// ------------------------------------------------------------------ bundle files

TEST(Bundle, RoundTripsThroughDisk) {
  auto p = make(Problem::KPath, 2);
  p.n = 6;
  p.k = 3;
  const Formulation f = formulate(p);
  const auto dir = std::filesystem::temp_directory_path() / "polyform_bundle_test";
  std::filesystem::remove_all(dir);
  write_bundle(dir, f);
  const Bundle b = read_bundle(dir);
  EXPECT_EQ(b.params, p);
  EXPECT_EQ(b.delta, f.delta);
  EXPECT_EQ(b.s(), f.s());
  EXPECT_EQ(b.poly.terms(), f.poly.terms());
  ASSERT_TRUE(b.splitter.has_value());
  EXPECT_EQ(b.splitter->members, f.splitter->members);

  std::ifstream legend(dir / "legend.txt");
  std::size_t lines = 0;
  for (std::string line; std::getline(legend, line);) {
    EXPECT_EQ(line.rfind(std::to_string(lines) + " k-path ", 0), 0U) << line;
    ++lines;
  }
  EXPECT_EQ(lines, f.s());
  std::ifstream meta(dir / "meta.txt");
  std::string text((std::istreambuf_iterator<char>(meta)), {});
  EXPECT_NE(text.find(" index=" + param_index(f.s(), 3).str()), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Bundle, AssignmentRoundTripAndErrors) {
  const Assignment a{1, 0, 0, 1, 1};
  std::stringstream ss;
  write_assignment(ss, a);
  EXPECT_EQ(ss.str(), "assign s=5\n1 0 0 1 1\n");
  EXPECT_EQ(read_assignment(ss), a);
  std::istringstream short_file("assign s=3\n1 0\n");
  EXPECT_THROW(read_assignment(short_file), FormatError);
  std::istringstream bad_bit("assign s=2\n1 2\n");
  EXPECT_THROW(read_assignment(bad_bit), FormatError);
  std::istringstream bad_header("bits s=2\n1 0\n");
  EXPECT_THROW(read_assignment(bad_header), FormatError);
}

TEST(Bundle, MissingDirectoryIsFormatError) {
  EXPECT_THROW(read_bundle("/nonexistent/polyform/bundle"), FormatError);
}

// ------------------------------------------------------------------ Hamiltonian path

TEST(HamPathFormulation, VariableCountWithSentinel) {
  auto p = make(Problem::HamPath, 2);
  p.n = 4;
  const Formulation f = formulate(p);
  std::size_t regular = 0;
  for (const auto& k : f.legend.keys()) regular += k.fields[2] != kOpenEnd;
  EXPECT_EQ(regular, 24U);
  EXPECT_EQ(f.s(), 36U);
}

TEST(HamPathFormulation, PathAndEdgeless) {
  auto p = make(Problem::HamPath, 2);
  p.n = 4;
  const Checked c(formulate(p));
  expect_static_ok(c);
  expect_decision(c, path_graph(4, true), true, "directed path");
  expect_decision(c, Graph(4, true), false, "edgeless");
}

TEST(HamPathFormulation, AllFourNodeDigraphs) {
  auto p = make(Problem::HamPath, 2);
  p.n = 4;
  const Checked c(formulate(p));
  expect_static_ok(c);
  for (std::uint64_t mask = 0; mask < (1U << 12); ++mask) {
    const Graph g = orc::directed_graph_from_mask(4, mask);
    expect_decision(c, g, orc::ham_path(g), "mask " + std::to_string(mask));
  }
}

TEST(HamPathFormulation, RandomSixNodeDigraphs) {
  auto p = make(Problem::HamPath, 3);
  p.n = 6;
  const Checked c(formulate(p));
  expect_static_ok(c);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Graph g = orc::random_graph(rng, 6, true, 0.35);
    expect_decision(c, g, orc::ham_path(g), "graph " + std::to_string(i));
  }
}

TEST(HamPathFormulation, ParameterErrors) {
  auto p = make(Problem::HamPath, 1);
  p.n = 4;
  EXPECT_THROW(formulate(p), ParameterError);
  p.theta = 5;
  EXPECT_THROW(formulate(p), ParameterError);
}

// ------------------------------------------------------------------ IS / clique / VC

TEST(IndependentSetFormulation, ZeroTargetIsConstant) {
  auto p = make(Problem::IndependentSet, 2);
  p.n = 5;
  p.t = 0;
  const Checked c(formulate(p));
  ASSERT_EQ(c.formulation().poly.size(), 1U);
  EXPECT_EQ(c.formulation().poly.degree(), 0U);
  expect_decision(c, complete_graph(5), true, "K5");
}

TEST(IndependentSetFormulation, CompleteGraphHasNoPair) {
  auto p = make(Problem::IndependentSet, 2);
  p.n = 5;
  p.t = 2;
  expect_decision(Checked(formulate(p)), complete_graph(5), false, "K5");
}

TEST(IndependentSetFormulation, AllFiveNodeGraphsAllTargets) {
  for (Problem pr : {Problem::IndependentSet, Problem::Clique, Problem::VertexCover}) {
    for (std::uint32_t t = 0; t <= 5; ++t) {
      auto p = make(pr, 2);
      p.n = 5;
      p.t = t;
      const Checked c(formulate(p));
      expect_static_ok(c);
      for (std::uint64_t mask = 0; mask < (1U << 10); mask += 3) {
        const Graph g = orc::undirected_graph_from_mask(5, mask);
        bool want = false;
        if (pr == Problem::IndependentSet) want = orc::max_independent(g) >= t;
        if (pr == Problem::Clique) want = orc::max_clique(g) >= t;
        if (pr == Problem::VertexCover) want = orc::min_vertex_cover(g) <= t;
        expect_decision(c, g, want, std::string(problem_tag(pr)) + " t=" + std::to_string(t));
      }
    }
  }
}

// ------------------------------------------------------------------ MAX-k-SAT

TEST(MaxSatFormulation, EmptyFormulaAndSingleClause) {
  auto p = make(Problem::MaxKSat, 2);
  p.n = 4;
  p.m = 0;
  p.k = 2;
  p.t = 0;
  expect_decision(Checked(formulate(p)), CnfFormula{4, {}}, true, "empty");
  p.m = 1;
  p.t = 1;
  expect_decision(Checked(formulate(p)), CnfFormula{4, {{1, 2}}}, true, "x1 or x2");
  expect_decision(Checked(formulate(p)), CnfFormula{4, {{-1, 3}}}, true, "not x1 or x3");
}

TEST(MaxSatFormulation, RandomTwoCnf) {
  std::mt19937_64 rng(2);
  std::map<std::pair<std::uint32_t, std::uint32_t>, Checked> cache;
  for (int i = 0; i < 40; ++i) {
    const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng() % 8);
    const CnfFormula cnf = orc::random_cnf(rng, 6, m, 2);
    const auto best = orc::max_satisfied(cnf);
    for (std::uint32_t t = 0; t <= m; ++t) {
      auto it = cache.find({m, t});
      if (it == cache.end()) {
        auto p = make(Problem::MaxKSat, 3);
        p.n = 6;
        p.m = m;
        p.k = 2;
        p.t = t;
        it = cache.emplace(std::pair{m, t}, Checked(formulate(p))).first;
        expect_static_ok(it->second);
      }
      expect_decision(it->second, cnf, best >= t, "cnf " + std::to_string(i) + " t=" + std::to_string(t));
    }
    auto p = make(Problem::KSat, 3);
    p.n = 6;
    p.m = m;
    p.k = 2;
    expect_decision(Checked(formulate(p)), cnf, best == m, "ksat " + std::to_string(i));
  }
}

TEST(MaxSatFormulation, ClauseWidthAboveThetaIsRejected) {
  auto p = make(Problem::MaxKSat, 2);
  p.n = 4;
  p.m = 1;
  p.k = 3;
  p.t = 1;
  EXPECT_THROW(formulate(p), ParameterError);
}

// ------------------------------------------------------------------ coloring

TEST(ColoringFormulation, EdgelessAndCompleteGraphs) {
  auto p = make(Problem::GraphColoring, 2);
  p.n = 4;
  p.t = 1;
  expect_decision(Checked(formulate(p)), Graph(4, false), true, "edgeless t=1");
  p.t = 3;
  expect_decision(Checked(formulate(p)), complete_graph(4), false, "K4 t=3");
  p.t = 4;
  expect_decision(Checked(formulate(p)), complete_graph(4), true, "K4 t=4");
}

TEST(ColoringFormulation, AllFourNodeGraphs) {
  for (std::uint32_t t = 1; t <= 4; ++t) {
    auto p = make(Problem::GraphColoring, 2);
    p.n = 4;
    p.t = t;
    const Checked c(formulate(p));
    expect_static_ok(c);
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
      const Graph g = orc::undirected_graph_from_mask(4, mask);
      expect_decision(c, g, orc::chromatic(g) <= t, "mask " + std::to_string(mask) + " t=" + std::to_string(t));
    }
  }
}

TEST(ColoringFormulation, FiveNodeGraphsThetaThree) {
  std::mt19937_64 rng(3);
  for (std::uint32_t t = 1; t <= 5; ++t) {
    auto p = make(Problem::GraphColoring, 3);
    p.n = 5;
    p.t = t;
    const Checked c(formulate(p));
    expect_static_ok(c);
    for (int i = 0; i < 40; ++i) {
      const Graph g = orc::random_graph(rng, 5, false, 0.5);
      expect_decision(c, g, orc::chromatic(g) <= t, "t=" + std::to_string(t));
    }
  }
}

// ------------------------------------------------------------------ set cover / 3d matching

TEST(SetCoverFormulation, Examples) {
  auto p = make(Problem::SetCover, 2);
  p.n = 4;
  p.m = 2;
  p.t = 1;
  expect_decision(Checked(formulate(p)), SetFamily{4, {0b0011, 0b1111}}, true, "contains universe");
  p.m = 4;
  p.t = 3;
  expect_decision(Checked(formulate(p)), SetFamily{4, {1, 2, 4, 8}}, false, "singletons");
}

TEST(SetCoverFormulation, RandomFamilies) {
  std::mt19937_64 rng(4);
  for (std::uint32_t t = 0; t <= 4; ++t) {
    auto p = make(Problem::SetCover, 2);
    p.n = 6;
    p.m = 6;
    p.t = t;
    const Checked c(formulate(p));
    expect_static_ok(c);
    for (int i = 0; i < 40; ++i) {
      const SetFamily fam = orc::random_family(rng, 6, 6, 0.4);
      expect_decision(c, fam, orc::min_cover(fam, 0b111111) <= t, "t=" + std::to_string(t));
    }
  }
}

TEST(MatchingFormulation, Examples) {
  auto p = make(Problem::Matching3d, 2);
  p.n = 3;
  p.t = 0;
  expect_decision(Checked(formulate(p)), Hypergraph3{3, {}}, true, "t=0");
  p.t = 1;
  expect_decision(Checked(formulate(p)), Hypergraph3{3, {{{0, 1, 2}}}}, true, "single triple");
}

TEST(MatchingFormulation, RandomHypergraphs) {
  std::mt19937_64 rng(5);
  for (std::uint32_t t = 0; t <= 3; ++t) {
    auto p = make(Problem::Matching3d, 2);
    p.n = 3;
    p.t = t;
    const Checked c(formulate(p));
    expect_static_ok(c);
    for (int i = 0; i < 60; ++i) {
      const Hypergraph3 h = orc::random_hyper3(rng, 3, 1 + static_cast<std::uint32_t>(rng() % 6));
      expect_decision(c, h, orc::max_matching3d(h, 7, 7, 7) >= t, "t=" + std::to_string(t));
    }
  }
}

// ------------------------------------------------------------------ parameterized problems

TEST(VertexCoverFormulation, Examples) {
  auto p = make(Problem::KVertexCover, 2);
  p.n = 4;
  p.k = 0;
  expect_decision(Checked(formulate(p)), Graph(4, false), true, "edgeless k=0");
  Graph star(5, false);
  for (std::uint32_t v = 1; v < 5; ++v) star.add_edge(0, v);
  p.n = 5;
  p.k = 1;
  expect_decision(Checked(formulate(p)), star, true, "star k=1");
}

TEST(VertexCoverFormulation, RandomSixNodeGraphs) {
  std::mt19937_64 rng(6);
  for (std::uint32_t k = 0; k <= 3; ++k) {
    auto p = make(Problem::KVertexCover, 2);
    p.n = 6;
    p.k = k;
    const Checked c(formulate(p));
    expect_static_ok(c);
    for (int i = 0; i < 150; ++i) {
      const Graph g = orc::random_graph(rng, 6, false, 0.25);
      expect_decision(c, g, orc::min_vertex_cover(g) <= k, "k=" + std::to_string(k));
    }
  }
}

TEST(SetSplittingFormulation, Examples) {
  auto p = make(Problem::KSetSplitting, 2);
  p.n = 2;
  p.m = 1;
  p.k = 0;
  expect_decision(Checked(formulate(p)), SetFamily{2, {0b01}}, true, "k=0");
  p.k = 1;
  expect_decision(Checked(formulate(p)), SetFamily{2, {0b01}}, false, "singleton");
  expect_decision(Checked(formulate(p)), SetFamily{2, {0b11}}, true, "pair");
}

TEST(SetSplittingFormulation, RandomFamilies) {
  std::mt19937_64 rng(7);
  for (std::uint32_t k = 1; k <= 3; ++k) {
    auto p = make(Problem::KSetSplitting, 2);
    p.n = 5;
    p.m = 5;
    p.k = k;
    const Checked c(formulate(p));
    expect_static_ok(c);
    for (int i = 0; i < 25; ++i) {
      const SetFamily fam = orc::random_family(rng, 5, 5, 0.35);
      expect_decision(c, fam, orc::max_split(fam) >= k, "k=" + std::to_string(k));
    }
  }
}

TEST(SteinerFormulation, Examples) {
  auto p = make(Problem::KSteinerTree, 2);
  p.n = 3;
  p.k = 1;
  p.w = 2;
  p.t = 0;
  Graph g(3, false, true);
  g.add_edge(0, 1, 2);
  g.terminals = 0b001;
  expect_decision(Checked(formulate(p)), g, true, "single terminal");
  p.k = 2;
  g.terminals = 0b011;
  Checked c(formulate(p));
  c.set_t(2);
  expect_decision(c, g, true, "adjacent pair at edge weight");
  c.set_t(1);
  expect_decision(c, g, false, "adjacent pair below edge weight");
}

TEST(SteinerFormulation, RandomWeightedGraphs) {
  std::mt19937_64 rng(8);
  auto p = make(Problem::KSteinerTree, 3);
  p.n = 6;
  p.k = 3;
  p.w = 6;
  p.t = 0;
  Checked c(formulate(p));
  expect_static_ok(c);
  for (int i = 0; i < 10; ++i) {
    Graph g = orc::random_graph(rng, 6, false, 0.4, true, 3);
    std::vector<std::uint32_t> nodes{0, 1, 2, 3, 4, 5};
    std::shuffle(nodes.begin(), nodes.end(), rng);
    g.terminals = bit(nodes[0]) | bit(nodes[1]) | bit(nodes[2]);
    const auto best = orc::steiner(g, g.terminals);
    for (std::uint32_t t = 0; t <= 6; ++t) {
      c.set_t(t);
      expect_decision(c, g, best && *best <= t, "graph " + std::to_string(i) + " t=" + std::to_string(t));
    }
  }
}

TEST(SpanningTreeFormulation, Examples) {
  auto p = make(Problem::KLeafSpanningTree, 3);
  p.n = 5;
  p.k = 3;
  expect_decision(Checked(formulate(p)), path_graph(5, false), false, "P5 three leaves");
  p.k = 0;
  expect_decision(Checked(formulate(p)), path_graph(5, false), true, "P5 k=0");
  p.problem = Problem::KInternalSpanningTree;
  p.k = 3;
  expect_decision(Checked(formulate(p)), path_graph(5, false), true, "P5 three internal");
  p.k = 4;
  expect_decision(Checked(formulate(p)), path_graph(5, false), false, "P5 four internal");
}

TEST(SpanningTreeFormulation, RandomConnectedGraphs) {
  std::mt19937_64 rng(9);
  for (Problem pr : {Problem::KInternalSpanningTree, Problem::KLeafSpanningTree}) {
    for (std::uint32_t k = 0; k <= 3; ++k) {
      auto p = make(pr, 3);
      p.n = 6;
      p.k = k;
      const Checked c(formulate(p));
      expect_static_ok(c);
      for (int i = 0; i < 30; ++i) {
        const Graph g = orc::random_connected_graph(rng, 6, 0.35);
        const auto ex = orc::spanning_trees(g);
        const bool want = pr == Problem::KInternalSpanningTree ? ex.max_internal >= k : ex.max_leaves >= k;
        expect_decision(c, g, want, std::string(problem_tag(pr)) + " k=" + std::to_string(k));
      }
    }
  }
}

TEST(SpanningTreeFormulation, ThetaTwoIsRejected) {
  auto p = make(Problem::KLeafSpanningTree, 2);
  p.n = 5;
  p.k = 2;
  EXPECT_THROW(formulate(p), ParameterError);
}

TEST(NonblockerFormulation, Examples) {
  auto p = make(Problem::KNonblocker, 2);
  p.n = 2;
  p.k = 0;
  expect_decision(Checked(formulate(p)), Graph(2, false), true, "k=0");
  p.k = 1;
  expect_decision(Checked(formulate(p)), complete_graph(2), true, "K2");
  expect_decision(Checked(formulate(p)), Graph(2, false), false, "two isolated nodes");
}

TEST(NonblockerFormulation, RandomGraphs) {
  std::mt19937_64 rng(10);
  for (std::uint32_t k = 1; k <= 3; ++k) {
    auto p = make(Problem::KNonblocker, 2);
    p.n = 6;
    p.k = k;
    const Checked c(formulate(p));
    expect_static_ok(c);
    for (int i = 0; i < 60; ++i) {
      const Graph g = orc::random_graph(rng, 6, false, 0.2);
      expect_decision(c, g, orc::max_nonblocker(g) >= k, "k=" + std::to_string(k));
    }
  }
}

TEST(KPathFormulation, Examples) {
  auto p = make(Problem::KPath, 2);
  p.n = 5;
  p.k = 1;
  expect_decision(Checked(formulate(p)), Graph(5, false), true, "k=1");
  p.k = 5;
  const Checked c(formulate(p));
  expect_static_ok(c);
  expect_decision(c, path_graph(5, false), true, "P5");
  Graph broken(5, false);
  for (auto [u, v] : {std::pair{0U, 1U}, {1U, 2U}, {3U, 4U}}) broken.add_edge(u, v);
  expect_decision(c, broken, false, "split path");
}

TEST(KPathFormulation, RandomGraphs) {
  std::mt19937_64 rng(12);
  for (std::uint32_t k = 2; k <= 4; ++k) {
    auto p = make(Problem::KPath, 2);
    p.n = 8;
    p.k = k;
    const Checked c(formulate(p));
    expect_static_ok(c);
    for (int i = 0; i < 15; ++i) {
      const bool directed = i % 2 == 1;
      const Graph g = orc::random_graph(rng, 8, directed, directed ? 0.2 : 0.15);
      expect_decision(c, g, orc::k_path(g, k), "k=" + std::to_string(k) + " graph " + std::to_string(i));
    }
  }
}
