#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>

#include "polyform/algebra/polynomial_io.hpp"
#include "polyform/formulations/core.hpp"

namespace polyform {

/// What a bundle directory holds once read back: enough to decide, not to re-assign.
struct Bundle {
  Params params;
  std::uint32_t delta = 0;
  SparsePolynomial poly;
  std::optional<SplitterFamily> splitter;

  [[nodiscard]] std::size_t s() const { return poly.nvars(); }
};

namespace detail {

inline void write_param(std::ostream& out, const char* name, const std::optional<std::uint32_t>& v) {
  if (v) out << ' ' << name << '=' << *v;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

inline std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  return in;
}

}  // namespace detail

inline void write_meta(std::ostream& out, const Params& p, std::uint32_t delta, std::size_t s) {
  out << "meta problem=" << problem_tag(p.problem);
  detail::write_param(out, "n", p.n);
  detail::write_param(out, "m", p.m);
  detail::write_param(out, "k", p.k);
  detail::write_param(out, "t", p.t);
  detail::write_param(out, "w", p.w);
  out << " theta=" << p.theta << " delta=" << delta << " s=" << s;
  if (is_parameterized(p.problem) && p.k) out << " index=" << param_index(s, *p.k);
  out << '\n';
}

inline void write_legend(std::ostream& out, const Formulation& f) {
  const auto tag = problem_tag(f.params.problem);
  for (std::size_t i = 0; i < f.legend.size(); ++i) {
    out << i << ' ' << tag << ' ';
    write_key(out, f.legend.key(static_cast<VarIndex>(i)));
    out << '\n';
  }
}

inline void write_bundle(const std::filesystem::path& dir, const Formulation& f) {
  std::filesystem::create_directories(dir);
  auto legend = detail::open_out(dir / "legend.txt");
  write_legend(legend, f);
  auto poly = detail::open_out(dir / "poly.txt");
  write_polynomial(poly, f.poly);
  auto meta = detail::open_out(dir / "meta.txt");
  write_meta(meta, f.params, f.delta, f.s());
  if (f.splitter) {
    auto sp = detail::open_out(dir / "splitter.txt");
    write_splitter(sp, *f.splitter);
  }
}

inline Bundle read_bundle(const std::filesystem::path& dir) {
  Bundle b;
  {
    auto in = detail::open_in(dir / "meta.txt");
    std::string line;
    if (!textio::next_content_line(in, line)) throw FormatError("empty meta.txt");
    const auto kv = textio::parse_header(line, "meta");
    const auto problem = parse_problem(textio::require_key(kv, "problem"));
    if (!problem) throw FormatError("unknown problem in meta.txt");
    b.params.problem = *problem;
    auto opt = [&](const char* name, std::optional<std::uint32_t>& field) {
      if (auto it = kv.find(name); it != kv.end()) field = static_cast<std::uint32_t>(textio::parse_u64(it->second, name));
    };
    opt("n", b.params.n);
    opt("m", b.params.m);
    opt("k", b.params.k);
    opt("t", b.params.t);
    opt("w", b.params.w);
    b.params.theta = static_cast<std::uint32_t>(textio::parse_u64(textio::require_key(kv, "theta"), "theta"));
    b.delta = static_cast<std::uint32_t>(textio::parse_u64(textio::require_key(kv, "delta"), "delta"));
    const auto s = textio::parse_u64(textio::require_key(kv, "s"), "s");
    auto pin = detail::open_in(dir / "poly.txt");
    b.poly = read_polynomial(pin);
    if (b.poly.nvars() != s) throw FormatError("poly.txt variable count disagrees with meta.txt");
    if (b.poly.degree() > b.delta) throw FormatError("poly.txt exceeds the declared degree");
  }
  if (std::filesystem::exists(dir / "splitter.txt")) {
    auto in = detail::open_in(dir / "splitter.txt");
    b.splitter = read_splitter(in);
  }
  return b;
}

inline void write_assignment(std::ostream& out, const Assignment& a) {
  out << "assign s=" << a.size() << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) out << (i ? " " : "") << static_cast<int>(a[i]);
  out << '\n';
}

inline Assignment read_assignment(std::istream& in) {
  std::string line;
  if (!textio::next_content_line(in, line)) throw FormatError("empty assignment file");
  const auto kv = textio::parse_header(line, "assign");
  const auto s = textio::parse_u64(textio::require_key(kv, "s"), "s");
  Assignment a;
  a.reserve(s);
  while (textio::next_content_line(in, line)) {
    for (const auto& tok : textio::split_ws(line)) {
      if (tok != "0" && tok != "1") throw FormatError("assignment entries must be 0 or 1, got " + tok);
      a.push_back(tok == "1");
    }
  }
  if (a.size() != s) {
    throw FormatError("assignment declares s=" + std::to_string(s) + " but lists " + std::to_string(a.size()) + " bits");
  }
  return a;
}

}  // namespace polyform
