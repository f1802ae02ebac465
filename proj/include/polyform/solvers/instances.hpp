#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "polyform/algebra/polynomial_io.hpp"
#include "polyform/errors.hpp"

namespace polyform {

/// Node and element sets are bitmasks; every instance is limited to 63 nodes/elements.
using NodeSet = std::uint64_t;
inline constexpr std::uint32_t kMaxNodes = 63;

inline constexpr NodeSet bit(std::uint32_t i) { return NodeSet{1} << i; }
inline constexpr NodeSet full_set(std::uint32_t n) { return n == 64 ? ~NodeSet{0} : bit(n) - 1; }
inline bool contains(NodeSet s, std::uint32_t i) { return (s >> i) & 1U; }

inline std::vector<std::uint32_t> members_of(NodeSet s) {
  std::vector<std::uint32_t> out;
  for (; s; s &= s - 1) out.push_back(static_cast<std::uint32_t>(std::countr_zero(s)));
  return out;
}

struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  std::int64_t w = 1;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple graph (no self-loops). Undirected graphs keep symmetric adjacency; `edges` lists each
/// undirected edge once with u < v.
class Graph {
 public:
  Graph() = default;
  Graph(std::uint32_t n, bool directed, bool weighted = false) : n_(n), directed_(directed), weighted_(weighted) {
    if (n > kMaxNodes) throw ParameterError("graphs are limited to 63 nodes");
    out_.assign(n, 0);
    in_.assign(n, 0);
  }

  /// Adds an edge; a repeated edge keeps the smaller weight.
  void add_edge(std::uint32_t u, std::uint32_t v, std::int64_t w = 1) {
    if (u >= n_ || v >= n_) throw ParameterError("edge endpoint out of range");
    if (u == v) throw ParameterError("self-loops are not supported");
    if (w < 0) throw ParameterError("edge weights must be nonnegative");
    if (!directed_ && u > v) std::swap(u, v);
    for (Edge& e : edges_) {
      if (e.u == u && e.v == v) {
        e.w = std::min(e.w, w);
        return;
      }
    }
    edges_.push_back(Edge{u, v, weighted_ ? w : 1});
    out_[u] |= bit(v);
    in_[v] |= bit(u);
    if (!directed_) {
      out_[v] |= bit(u);
      in_[u] |= bit(v);
    }
  }

  [[nodiscard]] std::uint32_t n() const { return n_; }
  [[nodiscard]] bool directed() const { return directed_; }
  [[nodiscard]] bool weighted() const { return weighted_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] NodeSet out(std::uint32_t u) const { return out_[u]; }
  [[nodiscard]] NodeSet in(std::uint32_t v) const { return in_[v]; }
  [[nodiscard]] bool has_edge(std::uint32_t u, std::uint32_t v) const { return contains(out_[u], v); }

  /// Weight of edge {u,v} (or (u,v) when directed); nullopt when absent.
  [[nodiscard]] std::optional<std::int64_t> weight(std::uint32_t u, std::uint32_t v) const {
    if (!has_edge(u, v)) return std::nullopt;
    if (!directed_ && u > v) std::swap(u, v);
    for (const Edge& e : edges_) {
      if (e.u == u && e.v == v) return e.w;
    }
    return std::nullopt;
  }

  /// Complement of an undirected graph.
  [[nodiscard]] Graph complement() const {
    if (directed_) throw ParameterError("complement is defined for undirected graphs");
    Graph g(n_, false);
    for (std::uint32_t u = 0; u < n_; ++u) {
      for (std::uint32_t v = u + 1; v < n_; ++v) {
        if (!has_edge(u, v)) g.add_edge(u, v);
      }
    }
    return g;
  }

  /// Terminal set carried by Steiner instances (empty otherwise).
  NodeSet terminals = 0;

 private:
  std::uint32_t n_ = 0;
  bool directed_ = false;
  bool weighted_ = false;
  std::vector<Edge> edges_;
  std::vector<NodeSet> out_;
  std::vector<NodeSet> in_;
};

/// CNF over variables 1..n; literals are signed DIMACS integers.
struct CnfFormula {
  std::uint32_t n = 0;
  std::vector<std::vector<int>> clauses;

  [[nodiscard]] std::uint32_t width() const {
    std::size_t k = 0;
    for (const auto& c : clauses) k = std::max(k, c.size());
    return static_cast<std::uint32_t>(k);
  }
};

struct SetFamily {
  std::uint32_t n = 0;            // universe [n]
  std::vector<NodeSet> sets;
};

/// 3-partite 3-uniform hypergraph; triple (a, b, c) takes a from part A, b from B, c from C.
struct Hypergraph3 {
  std::uint32_t n = 0;
  std::vector<std::array<std::uint32_t, 3>> triples;
};

// ---- text formats ----

namespace detail {

inline std::uint32_t parse_index(const std::string& tok, std::uint32_t n, const char* what) {
  const auto v = textio::parse_u64(tok, what);
  if (v >= n) throw FormatError(std::string(what) + " " + tok + " out of range");
  return static_cast<std::uint32_t>(v);
}

inline std::uint32_t parse_size(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto v = textio::parse_u64(textio::require_key(kv, key), key);
  if (v > kMaxNodes) throw FormatError(key + "=" + std::to_string(v) + " exceeds 63");
  return static_cast<std::uint32_t>(v);
}

inline bool parse_flag(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto& s = textio::require_key(kv, key);
  if (s != "0" && s != "1") throw FormatError(key + " must be 0 or 1");
  return s == "1";
}

}  // namespace detail

/// `graph directed=<0|1> weighted=<0|1> n=<n> m=<m>`, then m lines `u v [w]`, then an optional
/// `terminals a b ...` line.
inline Graph read_graph(std::istream& in) {
  std::string line;
  if (!textio::next_content_line(in, line)) throw FormatError("empty graph file");
  auto kv = textio::parse_header(line, "graph");
  const bool directed = detail::parse_flag(kv, "directed");
  const bool weighted = detail::parse_flag(kv, "weighted");
  const auto n = detail::parse_size(kv, "n");
  const auto m = textio::parse_u64(textio::require_key(kv, "m"), "m");
  Graph g(n, directed, weighted);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!textio::next_content_line(in, line)) throw FormatError("graph file ends after " + std::to_string(i) + " edges");
    auto toks = textio::split_ws(line);
    if (toks.size() != (weighted ? 3U : 2U)) throw FormatError("malformed edge line: " + line);
    const auto u = detail::parse_index(toks[0], n, "node");
    const auto v = detail::parse_index(toks[1], n, "node");
    const std::int64_t w = weighted ? textio::parse_i64(toks[2], "weight") : 1;
    try {
      g.add_edge(u, v, w);
    } catch (const ParameterError& e) {
      throw FormatError(std::string(e.what()) + ": " + line);
    }
  }
  if (textio::next_content_line(in, line)) {
    auto toks = textio::split_ws(line);
    if (toks.front() != "terminals") throw FormatError("unexpected content after edges: " + line);
    for (std::size_t i = 1; i < toks.size(); ++i) g.terminals |= bit(detail::parse_index(toks[i], n, "terminal"));
    if (textio::next_content_line(in, line)) throw FormatError("unexpected content after terminals: " + line);
  }
  return g;
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << "graph directed=" << g.directed() << " weighted=" << g.weighted() << " n=" << g.n()
      << " m=" << g.edges().size() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (g.weighted()) out << ' ' << e.w;
    out << '\n';
  }
  if (g.terminals) {
    out << "terminals";
    for (auto t : members_of(g.terminals)) out << ' ' << t;
    out << '\n';
  }
}

/// DIMACS CNF: `c` comments, `p cnf <n> <m>`, clauses terminated by 0 (may span lines).
inline CnfFormula read_dimacs(std::istream& in) {
  CnfFormula f;
  std::string line;
  std::optional<std::uint64_t> declared;
  std::vector<int> current;
  while (std::getline(in, line)) {
    auto toks = textio::split_ws(line);
    if (toks.empty() || toks.front() == "c" || toks.front()[0] == 'c' || toks.front() == "%") continue;
    if (toks.front() == "p") {
      if (declared || toks.size() != 4 || toks[1] != "cnf") throw FormatError("malformed problem line: " + line);
      const auto n = textio::parse_u64(toks[2], "variable count");
      if (n > kMaxNodes) throw FormatError("variable count exceeds 63");
      f.n = static_cast<std::uint32_t>(n);
      declared = textio::parse_u64(toks[3], "clause count");
      continue;
    }
    if (!declared) throw FormatError("clause before problem line");
    for (const auto& t : toks) {
      const auto lit = textio::parse_i64(t, "literal");
      if (lit == 0) {
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (static_cast<std::uint64_t>(lit < 0 ? -lit : lit) > f.n) throw FormatError("literal out of range: " + t);
      current.push_back(static_cast<int>(lit));
    }
  }
  if (!declared) throw FormatError("missing DIMACS problem line");
  if (!current.empty()) throw FormatError("last clause is not terminated by 0");
  if (f.clauses.size() != *declared) throw FormatError("clause count does not match problem line");
  return f;
}

inline void write_dimacs(std::ostream& out, const CnfFormula& f) {
  out << "p cnf " << f.n << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
}

inline SetFamily read_family(std::istream& in) {
  std::string line;
  if (!textio::next_content_line(in, line)) throw FormatError("empty family file");
  auto kv = textio::parse_header(line, "family");
  SetFamily f;
  f.n = detail::parse_size(kv, "n");
  const auto m = textio::parse_u64(textio::require_key(kv, "m"), "m");
  // Empty sets are written as empty lines, so read raw lines here.
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw FormatError("family file ends after " + std::to_string(i) + " sets");
    NodeSet s = 0;
    for (const auto& t : textio::split_ws(line)) s |= bit(detail::parse_index(t, f.n, "element"));
    f.sets.push_back(s);
  }
  if (textio::next_content_line(in, line)) throw FormatError("unexpected content after sets: " + line);
  return f;
}

inline void write_family(std::ostream& out, const SetFamily& f) {
  out << "family n=" << f.n << " m=" << f.sets.size() << '\n';
  for (NodeSet s : f.sets) {
    bool first = true;
    for (auto x : members_of(s)) {
      out << (first ? "" : " ") << x;
      first = false;
    }
    out << '\n';
  }
}

inline Hypergraph3 read_hyper3(std::istream& in) {
  std::string line;
  if (!textio::next_content_line(in, line)) throw FormatError("empty hypergraph file");
  auto kv = textio::parse_header(line, "hyper3");
  Hypergraph3 h;
  h.n = detail::parse_size(kv, "n");
  const auto m = textio::parse_u64(textio::require_key(kv, "m"), "m");
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!textio::next_content_line(in, line)) throw FormatError("hypergraph file ends early");
    auto toks = textio::split_ws(line);
    if (toks.size() != 3) throw FormatError("malformed triple: " + line);
    h.triples.push_back({detail::parse_index(toks[0], h.n, "element"), detail::parse_index(toks[1], h.n, "element"),
                         detail::parse_index(toks[2], h.n, "element")});
  }
  if (textio::next_content_line(in, line)) throw FormatError("unexpected content after triples: " + line);
  return h;
}

inline void write_hyper3(std::ostream& out, const Hypergraph3& h) {
  out << "hyper3 n=" << h.n << " m=" << h.triples.size() << '\n';
  for (const auto& t : h.triples) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

template <typename T, typename Reader>
T parse_from_string(const std::string& text, Reader reader) {
  std::istringstream in(text);
  return reader(in);
}

}  // namespace polyform
