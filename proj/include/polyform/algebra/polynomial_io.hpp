#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "polyform/algebra/polynomial.hpp"
#include "polyform/errors.hpp"

namespace polyform {

namespace textio {

/// Parses an unsigned decimal, throwing FormatError with context on failure.
inline std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw FormatError("bad " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

inline std::int64_t parse_i64(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw FormatError("bad " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

/// Splits "key=value" header tokens after a leading keyword; rejects a wrong keyword.
inline std::map<std::string, std::string> parse_header(const std::string& line, std::string_view keyword) {
  auto toks = split_ws(line);
  if (toks.empty() || toks.front() != keyword) {
    throw FormatError("expected header starting with '" + std::string(keyword) + "'");
  }
  std::map<std::string, std::string> kv;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    auto eq = toks[i].find('=');
    if (eq == std::string::npos) throw FormatError("header token without '=': " + toks[i]);
    kv[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
  }
  return kv;
}

inline const std::string& require_key(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw FormatError("missing header field '" + key + "'");
  return it->second;
}

/// Reads the next line that is not blank and not a '#' comment.
inline bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
  return false;
}

inline std::optional<PrimeModulus> parse_modulus(const std::string& s) {
  if (s == "none") return std::nullopt;
  auto p = parse_u64(s, "modulus");
  if (!is_prime(p)) throw FormatError("modulus " + s + " is not prime");
  return PrimeModulus{p, std::nullopt};
}

inline std::string modulus_string(const std::optional<PrimeModulus>& m) {
  return m ? std::to_string(m->p) : std::string("none");
}

}  // namespace textio

/// Writes `poly nvars=<n> degree=<d> modulus=<p|none>` and one `<coeff> x<v>^<e> ...` line per
/// term in canonical order; the constant term is written `<coeff> 1`.
inline void write_polynomial(std::ostream& out, const SparsePolynomial& poly) {
  out << "poly nvars=" << poly.nvars() << " degree=" << poly.degree_bound()
      << " modulus=" << textio::modulus_string(poly.modulus()) << '\n';
  for (const auto& [mono, coeff] : poly.terms()) {
    out << coeff.str();
    if (mono.is_constant()) {
      out << " 1";
    } else {
      for (const Power& p : mono.powers()) out << " x" << p.var << '^' << p.exp;
    }
    out << '\n';
  }
}

inline std::string polynomial_to_string(const SparsePolynomial& poly) {
  std::ostringstream s;
  write_polynomial(s, poly);
  return s.str();
}

inline SparsePolynomial read_polynomial(std::istream& in) {
  std::string line;
  if (!textio::next_content_line(in, line)) throw FormatError("empty polynomial file");
  auto kv = textio::parse_header(line, "poly");
  const auto nvars = textio::parse_u64(textio::require_key(kv, "nvars"), "nvars");
  const auto degree = textio::parse_u64(textio::require_key(kv, "degree"), "degree");
  const auto modulus = textio::parse_modulus(textio::require_key(kv, "modulus"));

  std::vector<SparsePolynomial::Term> terms;
  while (textio::next_content_line(in, line)) {
    auto toks = textio::split_ws(line);
    Integer coeff;
    try {
      coeff = Integer(toks.at(0));
    } catch (const std::exception&) {
      throw FormatError("bad coefficient in line: " + line);
    }
    Monomial::Storage powers;
    if (!(toks.size() == 2 && toks[1] == "1")) {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        std::string_view tok = toks[i];
        if (!tok.empty() && tok.front() == 'x') tok.remove_prefix(1);
        auto caret = tok.find('^');
        if (caret == std::string_view::npos) throw FormatError("expected <var>^<exp>, got " + toks[i]);
        const auto var = textio::parse_u64(tok.substr(0, caret), "variable index");
        const auto exp = textio::parse_u64(tok.substr(caret + 1), "exponent");
        if (var >= nvars) throw FormatError("variable index out of range: " + toks[i]);
        if (exp == 0) throw FormatError("zero exponent: " + toks[i]);
        powers.push_back(Power{static_cast<VarIndex>(var), static_cast<std::uint32_t>(exp)});
      }
    }
    terms.emplace_back(Monomial(std::move(powers)), std::move(coeff));
  }
  try {
    return SparsePolynomial::from_terms(nvars, modulus, std::move(terms), static_cast<std::uint32_t>(degree));
  } catch (const ParameterError& e) {
    throw FormatError(e.what());
  }
}

inline SparsePolynomial polynomial_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_polynomial(in);
}

}  // namespace polyform
