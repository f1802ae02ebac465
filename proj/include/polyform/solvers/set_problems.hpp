#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <tuple>
#include <vector>

#include "polyform/errors.hpp"
#include "polyform/solvers/instances.hpp"

namespace polyform {

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Fewest sets of F covering U (kUnreachable when impossible). DP over submasks of U.
inline std::uint32_t set_cover_min(const SetFamily& f, NodeSet u) {
  const auto elems = members_of(u);
  const auto k = static_cast<std::uint32_t>(elems.size());
  if (k > 24) throw ParameterError("set_cover: |U| exceeds the desk-scale cap");
  std::vector<std::uint32_t> local;
  for (NodeSet s : f.sets) {
    std::uint32_t m = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (contains(s, elems[i])) m |= 1U << i;
    }
    if (m) local.push_back(m);
  }
  std::vector<std::uint32_t> best(std::size_t{1} << k, kUnreachable);
  best[0] = 0;
  for (std::uint32_t mask = 1; mask < (1U << k); ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    for (std::uint32_t s : local) {
      if (!(s & low)) continue;  // some set must cover the lowest element
      const std::uint32_t prev = best[mask & ~s];
      if (prev != kUnreachable) best[mask] = std::min(best[mask], prev + 1);
    }
  }
  return best[(1U << k) - 1];
}

inline bool set_cover_at_most(const SetFamily& f, NodeSet u, std::uint32_t r) { return set_cover_min(f, u) <= r; }

/// Maximum matching of the hypergraph restricted to A x B x C, by the memoized recurrence over
/// the triple containing the smallest remaining element of A (or skipping it).
class Matching3dSolver {
 public:
  explicit Matching3dSolver(const Hypergraph3& h) : h_(h) {}

  std::uint32_t max_matching(NodeSet a, NodeSet b, NodeSet c) {
    if (!a || !b || !c) return 0;
    const auto key = std::make_tuple(a, b, c);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const auto x = static_cast<std::uint32_t>(std::countr_zero(a));
    std::uint32_t best = max_matching(a & ~bit(x), b, c);
    for (const auto& t : h_.triples) {
      if (t[0] != x || !contains(b, t[1]) || !contains(c, t[2])) continue;
      best = std::max(best, 1 + max_matching(a & ~bit(x), b & ~bit(t[1]), c & ~bit(t[2])));
    }
    memo_[key] = best;
    return best;
  }

 private:
  const Hypergraph3& h_;
  std::map<std::tuple<NodeSet, NodeSet, NodeSet>, std::uint32_t> memo_;
};

inline std::uint32_t matching3d_max(const Hypergraph3& h, NodeSet a, NodeSet b, NodeSet c) {
  Matching3dSolver s(h);
  return s.max_matching(a, b, c);
}

/// A literal is satisfied when its variable (1-based) is set to match its sign. `assignment` bit
/// i-1 holds variable i.
inline bool literal_true(int lit, std::uint64_t assignment) {
  const auto var = static_cast<std::uint32_t>((lit < 0 ? -lit : lit) - 1);
  return contains(assignment, var) == (lit > 0);
}

inline bool clause_satisfied(const std::vector<int>& clause, std::uint64_t assignment) {
  for (int lit : clause) {
    if (literal_true(lit, assignment)) return true;
  }
  return false;
}

/// Number of clauses among `clause_ids` satisfied by the assignment.
inline std::uint32_t sat_count_restricted(const CnfFormula& f, const std::vector<std::uint32_t>& clause_ids,
                                          std::uint64_t assignment) {
  std::uint32_t count = 0;
  for (auto i : clause_ids) count += clause_satisfied(f.clauses.at(i), assignment);
  return count;
}

inline std::uint32_t max_sat(const CnfFormula& f) {
  if (f.n > 24) throw ParameterError("max_sat: n exceeds the desk-scale cap");
  std::vector<std::uint32_t> all(f.clauses.size());
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  std::uint32_t best = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.n); ++a) best = std::max(best, sat_count_restricted(f, all, a));
  return best;
}

/// S meets both sides of the partition.
inline bool split_check(NodeSet a, NodeSet b, NodeSet s) { return (s & a) && (s & b); }

}  // namespace polyform
