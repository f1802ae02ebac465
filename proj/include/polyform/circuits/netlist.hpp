#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "polyform/algebra/polynomial_io.hpp"
#include "polyform/circuits/circuit.hpp"

namespace polyform {

// Netlist format:
//   circuit nvars=<n> modulus=<p|none>
//   g<i> = input <v> | const <c> | add g<a> g<b> | mul g<a> g<b>
//   output g<i> [g<j> ...]

inline void write_netlist(std::ostream& out, const ArithmeticCircuit& c) {
  out << "circuit nvars=" << c.nvars() << " modulus=" << textio::modulus_string(c.modulus()) << '\n';
  for (std::size_t i = 0; i < c.gate_count(); ++i) {
    const Gate& g = c.gates()[i];
    out << 'g' << i << " = ";
    switch (g.kind) {
      case GateKind::Input: out << "input " << g.var; break;
      case GateKind::Const: out << "const " << g.value.str(); break;
      case GateKind::Add: out << "add g" << g.lhs << " g" << g.rhs; break;
      case GateKind::Mul: out << "mul g" << g.lhs << " g" << g.rhs; break;
    }
    out << '\n';
  }
  out << "output";
  for (GateId o : c.outputs()) out << " g" << o;
  out << '\n';
}

inline std::string netlist_to_string(const ArithmeticCircuit& c) {
  std::ostringstream s;
  write_netlist(s, c);
  return s.str();
}

namespace detail {

inline std::uint64_t parse_gate_label(const std::string& tok) {
  if (tok.size() < 2 || tok.front() != 'g') throw FormatError("expected gate label g<i>, got '" + tok + "'");
  return textio::parse_u64(std::string_view(tok).substr(1), "gate label");
}

}  // namespace detail

/// Parses a netlist. Labels must strictly increase and operands must refer to earlier gates;
/// labels need not be contiguous and are renumbered densely.
inline ArithmeticCircuit read_netlist(std::istream& in) {
  std::string line;
  if (!textio::next_content_line(in, line)) throw FormatError("empty netlist");
  auto kv = textio::parse_header(line, "circuit");
  const auto nvars = textio::parse_u64(textio::require_key(kv, "nvars"), "nvars");
  const auto modulus = textio::parse_modulus(textio::require_key(kv, "modulus"));

  std::unordered_map<std::uint64_t, GateId> ids;
  std::vector<Gate> gates;
  std::optional<std::uint64_t> last_label;
  auto ref = [&](const std::string& tok) {
    const auto label = detail::parse_gate_label(tok);
    auto it = ids.find(label);
    if (it == ids.end()) throw FormatError("reference to undefined or later gate " + tok);
    return it->second;
  };

  std::vector<GateId> outputs;
  bool saw_output = false;
  while (textio::next_content_line(in, line)) {
    auto toks = textio::split_ws(line);
    if (saw_output) throw FormatError("content after output line: " + line);
    if (toks.front() == "output") {
      if (toks.size() < 2) throw FormatError("output line lists no gates");
      for (std::size_t i = 1; i < toks.size(); ++i) outputs.push_back(ref(toks[i]));
      saw_output = true;
      continue;
    }
    if (toks.size() < 3 || toks[1] != "=") throw FormatError("malformed gate line: " + line);
    const auto label = detail::parse_gate_label(toks[0]);
    if (last_label && label <= *last_label) throw FormatError("gate labels must strictly increase: " + toks[0]);
    const std::string& op = toks[2];
    Gate g;
    if (op == "input" && toks.size() == 4) {
      const auto v = textio::parse_u64(toks[3], "input variable");
      if (v >= nvars) throw FormatError("input variable out of range: " + line);
      g = Gate::input(static_cast<VarIndex>(v));
    } else if (op == "const" && toks.size() == 4) {
      try {
        g = Gate::constant(Integer(toks[3]));
      } catch (const std::exception&) {
        throw FormatError("bad constant: " + line);
      }
    } else if ((op == "add" || op == "mul") && toks.size() == 5) {
      const GateId a = ref(toks[3]);
      const GateId b = ref(toks[4]);
      g = op == "add" ? Gate::add(a, b) : Gate::mul(a, b);
    } else {
      throw FormatError("malformed gate line: " + line);
    }
    ids[label] = static_cast<GateId>(gates.size());
    gates.push_back(std::move(g));
    last_label = label;
  }
  if (!saw_output) throw FormatError("netlist has no output line");
  return ArithmeticCircuit(nvars, modulus, std::move(gates), std::move(outputs));
}

inline ArithmeticCircuit netlist_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_netlist(in);
}

}  // namespace polyform
