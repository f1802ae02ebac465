#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "polyform/algebra/monomial.hpp"
#include "polyform/algebra/pairing.hpp"
#include "polyform/algebra/polynomial.hpp"
#include "polyform/combinatorics.hpp"
#include "polyform/errors.hpp"
#include "polyform/solvers/instances.hpp"
#include "polyform/splitters/splitter.hpp"

namespace polyform {

enum class Problem {
  HamPath,
  IndependentSet,
  Clique,
  VertexCover,
  MaxKSat,
  KSat,
  GraphColoring,
  SetCover,
  Matching3d,
  KVertexCover,
  KSetSplitting,
  KSteinerTree,
  KInternalSpanningTree,
  KLeafSpanningTree,
  KNonblocker,
  KPath,
};

inline constexpr std::array<std::pair<Problem, std::string_view>, 16> kProblemTags{{
    {Problem::HamPath, "ham-path"},
    {Problem::IndependentSet, "independent-set"},
    {Problem::Clique, "clique"},
    {Problem::VertexCover, "vertex-cover"},
    {Problem::MaxKSat, "max-ksat"},
    {Problem::KSat, "ksat"},
    {Problem::GraphColoring, "graph-coloring"},
    {Problem::SetCover, "set-cover"},
    {Problem::Matching3d, "3d-matching"},
    {Problem::KVertexCover, "k-vertex-cover"},
    {Problem::KSetSplitting, "k-set-splitting"},
    {Problem::KSteinerTree, "k-steiner-tree"},
    {Problem::KInternalSpanningTree, "k-internal-spanning-tree"},
    {Problem::KLeafSpanningTree, "k-leaf-spanning-tree"},
    {Problem::KNonblocker, "k-nonblocker"},
    {Problem::KPath, "k-path"},
}};

inline std::string_view problem_tag(Problem p) {
  for (const auto& [q, tag] : kProblemTags) {
    if (q == p) return tag;
  }
  throw std::logic_error("unknown problem");
}

inline std::optional<Problem> parse_problem(std::string_view tag) {
  for (const auto& [q, t] : kProblemTags) {
    if (t == tag) return q;
  }
  return std::nullopt;
}

/// Problems carrying a parameter k whose formulation is registered at cantor_pair(s, k).
inline bool is_parameterized(Problem p) {
  switch (p) {
    case Problem::KVertexCover:
    case Problem::KSetSplitting:
    case Problem::KSteinerTree:
    case Problem::KInternalSpanningTree:
    case Problem::KLeafSpanningTree:
    case Problem::KNonblocker:
    case Problem::KPath:
      return true;
    default:
      return false;
  }
}

/// Size parameters shared by every formulation. Unused fields stay empty.
struct Params {
  Problem problem = Problem::HamPath;
  std::optional<std::uint32_t> n;
  std::optional<std::uint32_t> m;
  std::optional<std::uint32_t> k;
  std::optional<std::uint32_t> t;
  std::optional<std::uint32_t> w;
  std::uint32_t theta = 2;

  [[nodiscard]] std::uint32_t need(const std::optional<std::uint32_t>& field, const char* name) const {
    if (!field) {
      throw ParameterError(std::string(problem_tag(problem)) + " needs parameter " + name);
    }
    return *field;
  }
  [[nodiscard]] std::uint32_t get_n() const { return need(n, "n"); }
  [[nodiscard]] std::uint32_t get_m() const { return need(m, "m"); }
  [[nodiscard]] std::uint32_t get_k() const { return need(k, "k"); }
  [[nodiscard]] std::uint32_t get_t() const { return need(t, "t"); }
  [[nodiscard]] std::uint32_t get_w() const { return need(w, "w"); }

  friend bool operator==(const Params&, const Params&) = default;
};

// ------------------------------------------------------------------ variables

enum class VarKind : std::uint8_t {
  HamSeg,
  IndepSet,
  MaxSat,
  ColorBudget,
  ColorIndep,
  CoverBudget,
  CoverIn,
  Match3,
  PairCover,
  SteinerPiece,
  Budget,
  SpanPiece,
  NonBlk,
  Split,
  ColorfulSeg,
  EdgeVar,
};

/// Field value standing for "no end node" in HamSeg keys.
inline constexpr std::uint64_t kOpenEnd = ~std::uint64_t{0};

struct VariableKey {
  VarKind kind = VarKind::HamSeg;
  std::array<std::uint64_t, 4> fields{};

  friend bool operator==(const VariableKey&, const VariableKey&) = default;
};

struct VariableKeyHash {
  std::size_t operator()(const VariableKey& k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.kind) * 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t f : k.fields) {
      f ^= f >> 33U;
      f *= 0xff51afd7ed558ccdULL;
      f ^= f >> 33U;
      h = (h ^ f) * 0x100000001b3ULL + (h >> 29U);
    }
    return static_cast<std::size_t>(h);
  }
};

namespace detail {

enum class FieldType { Set, Int, EndNode };

struct KindSchema {
  VarKind kind;
  std::string_view tag;
  std::array<std::pair<std::string_view, FieldType>, 4> fields;
  std::size_t arity;
};

inline const KindSchema& schema(VarKind kind) {
  using enum FieldType;
  static const std::array<KindSchema, 16> table{{
      {VarKind::HamSeg, "seg", {{{"S", Set}, {"u", Int}, {"v", EndNode}, {}}}, 3},
      {VarKind::IndepSet, "indep", {{{"S", Set}, {}, {}, {}}}, 1},
      {VarKind::MaxSat, "sat", {{{"B", Set}, {"tau", Int}, {"r", Int}, {}}}, 3},
      {VarKind::ColorBudget, "chi", {{{"S", Set}, {"r", Int}, {}, {}}}, 2},
      {VarKind::ColorIndep, "indep", {{{"S", Set}, {}, {}, {}}}, 1},
      {VarKind::CoverBudget, "cover", {{{"S", Set}, {"r", Int}, {}, {}}}, 2},
      {VarKind::CoverIn, "subset", {{{"S", Set}, {"i", Int}, {}, {}}}, 2},
      {VarKind::Match3, "match", {{{"A", Set}, {"B", Set}, {"C", Set}, {}}}, 3},
      {VarKind::PairCover, "vc", {{{"i", Int}, {"j", Int}, {"A", Set}, {"B", Set}}}, 4},
      {VarKind::SteinerPiece, "piece", {{{"T", Set}, {"A", Set}, {"l", Int}, {}}}, 3},
      {VarKind::Budget, "budget", {{{"L", Int}, {}, {}, {}}}, 1},
      {VarKind::SpanPiece, "piece", {{{"S", Set}, {"A", Set}, {"k", Int}, {}}}, 3},
      {VarKind::NonBlk, "dom", {{{"N", Set}, {"D", Set}, {}, {}}}, 2},
      {VarKind::Split, "split", {{{"A", Set}, {"B", Set}, {"L", Set}, {}}}, 3},
      {VarKind::ColorfulSeg, "colorful", {{{"f", Int}, {"C", Set}, {"u", Int}, {"v", Int}}}, 4},
      {VarKind::EdgeVar, "edge", {{{"u", Int}, {"v", Int}, {}, {}}}, 2},
  }};
  return table[static_cast<std::size_t>(kind)];
}

}  // namespace detail

inline void write_key(std::ostream& out, const VariableKey& key) {
  const auto& sc = detail::schema(key.kind);
  out << sc.tag;
  for (std::size_t i = 0; i < sc.arity; ++i) {
    const auto& [name, type] = sc.fields[i];
    const std::uint64_t v = key.fields[i];
    out << ' ' << name << '=';
    if (type == detail::FieldType::Set) {
      out << '{';
      bool first = true;
      for (auto x : members_of(v)) {
        out << (first ? "" : ",") << x;
        first = false;
      }
      out << '}';
    } else if (type == detail::FieldType::EndNode && v == kOpenEnd) {
      out << "end";
    } else {
      out << v;
    }
  }
}

/// Bijection between variable keys and indices 0..s-1 (insertion order).
class Legend {
 public:
  VarIndex add(const VariableKey& key) {
    auto [it, fresh] = index_.emplace(key, static_cast<VarIndex>(keys_.size()));
    if (!fresh) throw std::logic_error("duplicate variable key in legend");
    keys_.push_back(key);
    return it->second;
  }

  [[nodiscard]] VarIndex at(const VariableKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) throw std::logic_error("variable key missing from legend");
    return it->second;
  }

  [[nodiscard]] std::optional<VarIndex> find(const VariableKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] std::size_t size() const { return keys_.size(); }
  [[nodiscard]] const std::vector<VariableKey>& keys() const { return keys_; }
  [[nodiscard]] const VariableKey& key(VarIndex i) const { return keys_.at(i); }

 private:
  std::vector<VariableKey> keys_;
  std::unordered_map<VariableKey, VarIndex, VariableKeyHash> index_;
};

inline constexpr std::size_t kMaxFormulationMonomials = 6'000'000;

/// Collects multilinear monomials with coefficient 1; repeated witnesses collapse.
class MonomialCollector {
 public:
  explicit MonomialCollector(std::uint32_t delta) : delta_(delta) {}

  void add(std::span<const VarIndex> factors) {
    Monomial::Storage s;
    s.reserve(factors.size());
    for (VarIndex v : factors) s.push_back(Power{v, 1});
    std::sort(s.begin(), s.end(), [](const Power& a, const Power& b) { return a.var < b.var; });
    s.erase(std::unique(s.begin(), s.end(), [](const Power& a, const Power& b) { return a.var == b.var; }), s.end());
    if (s.size() > delta_) throw std::logic_error("formulation monomial exceeds its declared degree bound");
    set_.emplace(std::move(s));
    if (set_.size() > kMaxFormulationMonomials) {
      throw ParameterError("formulation exceeds the desk-scale monomial cap");
    }
  }

  void add(std::initializer_list<VarIndex> factors) { add(std::span<const VarIndex>(factors.begin(), factors.size())); }

  [[nodiscard]] std::size_t size() const { return set_.size(); }

  SparsePolynomial build(std::size_t nvars) && {
    std::vector<SparsePolynomial::Term> terms;
    terms.reserve(set_.size());
    for (auto it = set_.begin(); it != set_.end();) {
      auto node = set_.extract(it++);
      terms.emplace_back(std::move(node.value()), Integer{1});
    }
    return SparsePolynomial::from_terms(nvars, std::nullopt, std::move(terms), delta_);
  }

 private:
  std::uint32_t delta_;
  std::unordered_set<Monomial, MonomialHash> set_;
};

struct Formulation {
  Params params;
  Legend legend;
  SparsePolynomial poly;
  std::uint32_t delta = 0;
  std::optional<SplitterFamily> splitter;  // k-path only

  [[nodiscard]] std::size_t s() const { return legend.size(); }
};

using Assignment = std::vector<std::uint8_t>;

/// P at a 0/1 point: the coefficient sum over monomials whose variables are all set.
inline Integer evaluate_boolean(const SparsePolynomial& poly, std::span<const std::uint8_t> point) {
  if (point.size() != poly.nvars()) {
    throw ArityError("assignment has " + std::to_string(point.size()) + " entries, polynomial has " +
                     std::to_string(poly.nvars()) + " variables");
  }
  Integer sum = 0;
  for (const auto& [mono, coeff] : poly.terms()) {
    bool on = true;
    for (const Power& p : mono.powers()) {
      if (point[p.var] == 0) {
        on = false;
        break;
      }
    }
    if (on) sum += coeff;
  }
  if (const auto& m = poly.modulus()) sum = normalize_mod(sum, m->p);
  return sum;
}

struct Decision {
  bool yes = false;
  Integer value;
};

inline Decision decide(const Formulation& f, const Assignment& a) {
  for (auto bit_value : a) {
    if (bit_value > 1) throw ParameterError("assignment entries must be 0 or 1");
  }
  Integer v = evaluate_boolean(f.poly, a);
  return {v > 0, std::move(v)};
}

/// Index of a parameterized formulation in the global family.
inline Integer param_index(std::uint64_t s, std::uint64_t k) { return cantor_pair(s, k); }

// ------------------------------------------------------------------ enumeration helpers

/// Calls f(S) for every S within `universe` with lo <= |S| <= hi, by size and then increasing value.
template <typename F>
void for_each_subset_sized(NodeSet universe, std::uint32_t lo, std::uint32_t hi, F&& f) {
  const auto elems = members_of(universe);
  const auto n = static_cast<std::uint32_t>(elems.size());
  hi = std::min(hi, n);
  for (std::uint32_t size = lo; size <= hi; ++size) {
    if (size == 0) {
      f(NodeSet{0});
      continue;
    }
    for (std::uint64_t local = (std::uint64_t{1} << size) - 1; local < (std::uint64_t{1} << n);
         local = next_same_popcount(local)) {
      NodeSet s = 0;
      for (std::uint64_t r = local; r; r &= r - 1) s |= bit(elems[std::countr_zero(r)]);
      f(s);
      if (size == n) break;
    }
  }
}

/// Lexicographically first split of L (sorted elements) into consecutive chunks of size b.
inline std::vector<NodeSet> consecutive_chunks(NodeSet l, std::uint32_t b) {
  std::vector<NodeSet> out;
  NodeSet cur = 0;
  std::uint32_t count = 0;
  for (auto x : members_of(l)) {
    cur |= bit(x);
    if (++count == b) {
      out.push_back(cur);
      cur = 0;
      count = 0;
    }
  }
  if (cur) out.push_back(cur);
  return out;
}

/// Calls f(groups) for every assignment of the elements of `items` to `groups` labelled
/// groups (each element in exactly one group) such that group sizes stay <= cap.
template <typename F>
void for_each_labelled_split(NodeSet items, std::uint32_t groups, std::uint32_t cap, F&& f) {
  const auto elems = members_of(items);
  std::vector<NodeSet> part(groups, 0);
  std::vector<std::uint32_t> size(groups, 0);
  auto rec = [&](auto& self, std::size_t i) -> void {
    if (i == elems.size()) {
      f(static_cast<const std::vector<NodeSet>&>(part));
      return;
    }
    for (std::uint32_t g = 0; g < groups; ++g) {
      if (size[g] == cap) continue;
      part[g] |= bit(elems[i]);
      ++size[g];
      self(self, i + 1);
      --size[g];
      part[g] &= ~bit(elems[i]);
    }
  };
  rec(rec, 0);
}

/// Calls f(parts) for every vector of `count` nonnegative integers with sum `total` and
/// parts[i] <= caps[i].
template <typename F>
void for_each_composition(std::uint32_t total, const std::vector<std::uint32_t>& caps, F&& f) {
  std::vector<std::uint32_t> parts(caps.size(), 0);
  std::vector<std::uint32_t> room(caps.size() + 1, 0);
  for (std::size_t i = caps.size(); i-- > 0;) room[i] = room[i + 1] + caps[i];
  auto rec = [&](auto& self, std::size_t i, std::uint32_t left) -> void {
    if (i == caps.size()) {
      if (left == 0) f(static_cast<const std::vector<std::uint32_t>&>(parts));
      return;
    }
    if (room[i] < left) return;
    for (std::uint32_t v = 0; v <= std::min(caps[i], left); ++v) {
      parts[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, total);
}

inline void require_theta(const Params& p, std::uint32_t min_theta) {
  if (p.theta < min_theta) {
    throw ParameterError(std::string(problem_tag(p.problem)) + " needs theta >= " + std::to_string(min_theta));
  }
}

inline void require_nodes(std::uint32_t n, std::uint32_t cap, const char* what) {
  if (n > cap) throw ParameterError(std::string(what) + ": n exceeds the desk-scale cap");
}

}  // namespace polyform
