#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "polyform/algebra/polynomial_io.hpp"
#include "polyform/combinatorics.hpp"
#include "polyform/errors.hpp"

namespace polyform {

using Color = std::uint32_t;

/// A map [n] -> [range].
struct Coloring {
  std::uint32_t range = 1;
  std::vector<Color> table;

  [[nodiscard]] std::size_t n() const { return table.size(); }
  Color operator()(std::size_t x) const { return table[x]; }
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

enum class SplitterKind { EvenSplit, Injective };

inline const char* to_string(SplitterKind k) { return k == SplitterKind::EvenSplit ? "even" : "injective"; }

struct SplitterFamily {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t range = 1;
  SplitterKind kind = SplitterKind::Injective;
  std::vector<Coloring> members;

  [[nodiscard]] std::size_t size() const { return members.size(); }
  friend bool operator==(const SplitterFamily&, const SplitterFamily&) = default;
};

inline constexpr std::uint64_t kMaxVerifiedSubsets = 10'000'000;

/// True when f restricted to subset has all part sizes in {floor(k/range), ceil(k/range)}
/// (even mode) or is injective (injective mode).
inline bool splits(const Coloring& f, const std::vector<std::uint32_t>& subset, SplitterKind mode,
                   std::vector<std::uint32_t>& counts) {
  const std::size_t k = subset.size();
  counts.assign(f.range, 0);
  for (auto x : subset) {
    if (++counts[f(x)] > 1 && mode == SplitterKind::Injective) return false;
  }
  if (mode == SplitterKind::Injective) return true;
  const std::uint32_t lo = static_cast<std::uint32_t>(k / f.range);
  const std::uint32_t hi = static_cast<std::uint32_t>(ceil_div(k, f.range));
  for (auto c : counts) {
    if (c < lo || c > hi) return false;
  }
  return true;
}

struct SplitterCheck {
  bool ok = false;
  std::vector<std::uint32_t> witness;  // first uncovered k-subset in lexicographic order
  explicit operator bool() const { return ok; }
};

/// Exhaustive check over all k-subsets of [n].
inline SplitterCheck verify_splitter(const SplitterFamily& h, SplitterKind mode) {
  if (binomial(h.n, h.k) > kMaxVerifiedSubsets) {
    throw ParameterError("C(" + std::to_string(h.n) + "," + std::to_string(h.k) + ") exceeds the verification cap");
  }
  if (h.k > h.n) return {true, {}};
  auto subset = first_combination<std::uint32_t>(h.k);
  std::vector<std::uint32_t> counts;
  std::size_t last_hit = 0;  // the member that covered the previous subset often covers the next one
  do {
    bool covered = false;
    for (std::size_t t = 0; t < h.members.size() && !covered; ++t) {
      const std::size_t m = (last_hit + t) % h.members.size();
      if (splits(h.members[m], subset, mode, counts)) {
        covered = true;
        last_hit = m;
      }
    }
    if (!covered) return {false, subset};
  } while (next_combination<std::uint32_t>(subset, h.n));
  return {true, {}};
}

// Text format: header `splitter n= k= range= kind=even|injective count=` then one line of n colors per member.

inline void write_splitter(std::ostream& out, const SplitterFamily& h) {
  out << "splitter n=" << h.n << " k=" << h.k << " range=" << h.range << " kind=" << to_string(h.kind)
      << " count=" << h.members.size() << '\n';
  for (const Coloring& f : h.members) {
    for (std::size_t x = 0; x < f.n(); ++x) out << (x ? " " : "") << f(x);
    out << '\n';
  }
}

inline std::string splitter_to_string(const SplitterFamily& h) {
  std::ostringstream s;
  write_splitter(s, h);
  return s.str();
}

inline SplitterFamily read_splitter(std::istream& in) {
  std::string line;
  if (!textio::next_content_line(in, line)) throw FormatError("empty splitter file");
  auto kv = textio::parse_header(line, "splitter");
  SplitterFamily h;
  h.n = static_cast<std::uint32_t>(textio::parse_u64(textio::require_key(kv, "n"), "n"));
  h.k = static_cast<std::uint32_t>(textio::parse_u64(textio::require_key(kv, "k"), "k"));
  h.range = static_cast<std::uint32_t>(textio::parse_u64(textio::require_key(kv, "range"), "range"));
  const std::string& kind = textio::require_key(kv, "kind");
  if (kind == "even") {
    h.kind = SplitterKind::EvenSplit;
  } else if (kind == "injective") {
    h.kind = SplitterKind::Injective;
  } else {
    throw FormatError("unknown splitter kind '" + kind + "'");
  }
  if (h.range == 0) throw FormatError("splitter range must be positive");
  const auto count = textio::parse_u64(textio::require_key(kv, "count"), "count");
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!textio::next_content_line(in, line)) throw FormatError("splitter file ends after " + std::to_string(i) + " members");
    auto toks = textio::split_ws(line);
    if (toks.size() != h.n) throw FormatError("member line has " + std::to_string(toks.size()) + " colors, expected n");
    Coloring f{h.range, {}};
    for (const auto& t : toks) {
      const auto c = textio::parse_u64(t, "color");
      if (c >= h.range) throw FormatError("color " + t + " out of range");
      f.table.push_back(static_cast<Color>(c));
    }
    h.members.push_back(std::move(f));
  }
  if (textio::next_content_line(in, line)) throw FormatError("trailing content after splitter members");
  if (h.members.empty()) throw FormatError("splitter family is empty");
  return h;
}

inline SplitterFamily splitter_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_splitter(in);
}

}  // namespace polyform
