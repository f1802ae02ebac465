#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "polyform/pipeline.hpp"
#include "polyform/selftest.hpp"
#include "polyform/splitters.hpp"

namespace {

using namespace polyform;

constexpr int kExitOk = 0;
constexpr int kExitParameter = 2;
constexpr int kExitReject = 3;
constexpr int kExitUsage = 64;
constexpr int kExitMalformed = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  return in;
}

/// Writes through `write` to `path`, or to stdout when path is empty.
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out);
}

Problem problem_or_usage(const std::string& tag) {
  auto p = parse_problem(tag);
  if (!p) throw UsageError("unknown problem '" + tag + "'");
  return *p;
}

bool is_param_token(const std::string& tok) {
  static const std::regex re("^(n|m|k|t|w|theta)=[0-9]+$");
  return std::regex_match(tok, re);
}

/// Applies `key=value` tokens to p. A --theta flag, when given, wins over theta=.
void apply_params(Params& p, const std::vector<std::string>& tokens, std::optional<std::uint32_t> theta_flag) {
  for (const auto& tok : tokens) {
    if (!is_param_token(tok)) throw UsageError("expected key=value parameter, got '" + tok + "'");
    const auto eq = tok.find('=');
    const auto key = tok.substr(0, eq);
    const auto value = static_cast<std::uint32_t>(textio::parse_u64(tok.substr(eq + 1), key));
    if (key == "n") p.n = value;
    if (key == "m") p.m = value;
    if (key == "k") p.k = value;
    if (key == "t") p.t = value;
    if (key == "w") p.w = value;
    if (key == "theta") p.theta = value;
  }
  if (theta_flag) p.theta = *theta_flag;
}

Instance load_instance(Problem p, const std::string& path) {
  auto in = open_input(path);
  return read_instance(p, in);
}

ArithmeticCircuit load_netlist(const std::string& path) {
  auto in = open_input(path);
  return read_netlist(in);
}

SparsePolynomial load_polynomial(const std::string& path) {
  auto in = open_input(path);
  return read_polynomial(in);
}

SplitterKind parse_mode(const std::string& mode) {
  if (mode == "even") return SplitterKind::EvenSplit;
  if (mode == "injective") return SplitterKind::Injective;
  throw UsageError("unknown splitter mode '" + mode + "'");
}

ArithmeticCircuit over_prime(const ArithmeticCircuit& c, const PrimeModulus& p) {
  if (c.modulus() && c.modulus()->p != p.p) {
    throw IncompatibleRingError("circuit is over Z_" + std::to_string(c.modulus()->p));
  }
  return ArithmeticCircuit(c.nvars(), p, c.gates(), c.outputs());
}

int run(int argc, char** argv) {
  CLI::App app{"polyform: polynomial formulations, circuits and splitters"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "polyform 1.0");

  // formulate
  std::string problem_tag_arg;
  std::vector<std::string> param_tokens;
  std::optional<std::uint32_t> theta_flag;
  std::string out_path;
  auto* formulate_cmd = app.add_subcommand("formulate", "Write a formulation bundle (legend, poly, meta)");
  formulate_cmd->add_option("problem", problem_tag_arg, "Problem tag")->required();
  formulate_cmd->add_option("params", param_tokens, "Size parameters as key=value");
  formulate_cmd->add_option("--theta", theta_flag, "Block parameter");
  formulate_cmd->add_option("-o,--out", out_path, "Bundle directory")->required();

  // assign
  std::string instance_path;
  std::string bundle_path;
  auto* assign_cmd = app.add_subcommand("assign", "Compute the 0/1 point phi(x) for an instance");
  assign_cmd->add_option("problem", problem_tag_arg, "Problem tag")->required();
  assign_cmd->add_option("instance", instance_path, "Instance file")->required();
  assign_cmd->add_option("params", param_tokens, "Size parameters as key=value");
  assign_cmd->add_option("--theta", theta_flag, "Block parameter");
  assign_cmd->add_option("--bundle", bundle_path, "Take parameters from this bundle's meta.txt");
  assign_cmd->add_option("-o,--out", out_path, "Assignment file (default stdout)");

  // decide
  std::string assignment_path;
  auto* decide_cmd = app.add_subcommand("decide", "Evaluate a bundle's polynomial at an assignment");
  decide_cmd->add_option("bundle", bundle_path, "Bundle directory")->required();
  decide_cmd->add_option("assignment", assignment_path, "Assignment file")->required();

  // circuit
  std::string netlist_path;
  std::string poly_path;
  std::optional<std::uint32_t> delta_flag;
  std::optional<std::uint64_t> prime_flag;
  std::vector<std::string> point_tokens;
  auto* circuit_cmd = app.add_subcommand("circuit", "Arithmetic circuit tools");
  circuit_cmd->require_subcommand(1);
  auto* sop_cmd = circuit_cmd->add_subcommand("build-sop", "Sum-of-products circuit for a polynomial");
  sop_cmd->add_option("poly", poly_path, "Polynomial file")->required();
  sop_cmd->add_option("-o,--out", out_path, "Netlist file (default stdout)");
  auto* verify_cmd = circuit_cmd->add_subcommand("verify", "Check a circuit against a polynomial over Z_p");
  verify_cmd->add_option("netlist", netlist_path, "Candidate netlist")->required();
  verify_cmd->add_option("poly", poly_path, "Target polynomial")->required();
  verify_cmd->add_option("--delta", delta_flag, "Degree bound (default: target degree)");
  verify_cmd->add_option("--p", prime_flag, "Prime modulus (default: the target's or circuit's)");
  auto* homog_cmd = circuit_cmd->add_subcommand("homogenize", "Split a circuit into homogeneous components");
  homog_cmd->add_option("netlist", netlist_path, "Netlist file")->required();
  homog_cmd->add_option("--delta", delta_flag, "Degree bound")->required();
  homog_cmd->add_option("-o,--out", out_path, "Netlist file (default stdout)");
  auto* eval_cmd = circuit_cmd->add_subcommand("eval", "Evaluate a circuit at a point");
  eval_cmd->add_option("netlist", netlist_path, "Netlist file")->required();
  eval_cmd->add_option("point", point_tokens, "One integer per variable");
  eval_cmd->add_option("--p", prime_flag, "Evaluate modulo this prime");

  // splitter
  std::string construction;
  std::vector<std::uint32_t> splitter_args;
  std::string splitter_path;
  std::string mode_arg;
  auto* splitter_cmd = app.add_subcommand("splitter", "Splitter families");
  splitter_cmd->require_subcommand(1);
  auto* build_cmd = splitter_cmd->add_subcommand("build", "Build a family: code n k | interval n k l | greedy n k c | compose n k c");
  build_cmd->add_option("construction", construction, "code, interval, greedy or compose")->required();
  build_cmd->add_option("args", splitter_args, "Numeric parameters")->required();
  build_cmd->add_option("-o,--out", out_path, "Splitter file (default stdout)");
  auto* sverify_cmd = splitter_cmd->add_subcommand("verify", "Exhaustively check a family");
  sverify_cmd->add_option("file", splitter_path, "Splitter file")->required();
  sverify_cmd->add_option("--mode", mode_arg, "even or injective (default: the family's kind)");

  // pipeline
  std::vector<std::string> pipeline_tokens;
  std::string candidate_path;
  std::string prime_policy = "count";
  unsigned jobs = 1;
  bool timings = false;
  std::uint64_t seed = 1;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "Formulate, verify a circuit, and decide instances mod p");
  pipeline_cmd->add_option("problem", problem_tag_arg, "Problem tag")->required();
  pipeline_cmd->add_option("inputs", pipeline_tokens, "Instance files and key=value parameters");
  pipeline_cmd->add_option("--theta", theta_flag, "Block parameter");
  pipeline_cmd->add_option("--candidate", candidate_path, "Use this netlist instead of the canonical circuit");
  pipeline_cmd->add_option("--prime-policy", prime_policy, "count or svar")->check(CLI::IsMember({"count", "svar"}));
  pipeline_cmd->add_option("--jobs", jobs, "Worker threads for the solving stage")->check(CLI::PositiveNumber);
  pipeline_cmd->add_flag("--timings", timings, "Print per-stage wall-clock times");
  pipeline_cmd->add_option("--seed", seed, "Unused by the pipeline; accepted for uniformity");

  // selftest
  std::string scope;
  auto* selftest_cmd = app.add_subcommand("selftest", "Built-in consistency sweeps");
  selftest_cmd->add_option("scope", scope, "algebra, circuits, splitters, solvers, formulations, pipeline or all")
      ->required();
  selftest_cmd->add_option("--seed", seed, "Seed for generated test instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (*formulate_cmd) {
    Params p;
    p.problem = problem_or_usage(problem_tag_arg);
    apply_params(p, param_tokens, theta_flag);
    const Formulation f = formulate(p);
    write_bundle(out_path, f);
    std::cout << "bundle " << out_path << " problem=" << problem_tag(p.problem) << " s=" << f.s()
              << " delta=" << f.delta << " monomials=" << f.poly.size() << '\n';
    return kExitOk;
  }

  if (*assign_cmd) {
    const Problem problem = problem_or_usage(problem_tag_arg);
    Params p;
    if (!bundle_path.empty()) {
      p = read_bundle(bundle_path).params;
      if (p.problem != problem) throw UsageError("bundle is for " + std::string(problem_tag(p.problem)));
    } else {
      p.problem = problem;
    }
    apply_params(p, param_tokens, theta_flag);
    const Instance x = load_instance(problem, instance_path);
    const Formulation f = formulate(complete_params(p, x));
    const Assignment a = assign(f, x);
    emit(out_path, [&](std::ostream& out) { write_assignment(out, a); });
    return kExitOk;
  }

  if (*decide_cmd) {
    const Bundle b = read_bundle(bundle_path);
    auto in = open_input(assignment_path);
    const Assignment a = read_assignment(in);
    const Integer value = evaluate_boolean(b.poly, a);
    std::cout << (value > 0 ? "yes" : "no") << " value=" << value.str() << '\n';
    return kExitOk;
  }

  if (*sop_cmd) {
    const auto c = sum_of_products_circuit(load_polynomial(poly_path));
    emit(out_path, [&](std::ostream& out) { write_netlist(out, c); });
    return kExitOk;
  }

  if (*verify_cmd) {
    const ArithmeticCircuit c = load_netlist(netlist_path);
    const SparsePolynomial target = load_polynomial(poly_path);
    std::optional<std::uint64_t> p = prime_flag;
    if (!p && target.modulus()) p = target.modulus()->p;
    if (!p && c.modulus()) p = c.modulus()->p;
    if (!p) throw ParameterError("circuit verify needs --p when neither file names a modulus");
    if (!is_prime(*p)) throw ParameterError("--p must be prime");
    const PrimeModulus mod{*p, std::nullopt};
    if (target.modulus() && target.modulus()->p != *p) throw IncompatibleRingError("target is over a different prime");
    const SparsePolynomial t = target.modulus() ? target : reduce_mod(target, mod);
    const VerifyResult r = verify_circuit(over_prime(c, mod), t, delta_flag.value_or(t.degree()), mod);
    if (r.accepted) {
      std::cout << "accept\n";
      return kExitOk;
    }
    std::cout << "reject witness=" << monomial_text(*r.witness) << " circuit=" << r.circuit_coefficient.str()
              << " target=" << r.target_coefficient.str() << '\n';
    return kExitReject;
  }

  if (*homog_cmd) {
    const auto h = homogenize(load_netlist(netlist_path), *delta_flag);
    emit(out_path, [&](std::ostream& out) { write_netlist(out, h.base); });
    return kExitOk;
  }

  if (*eval_cmd) {
    const ArithmeticCircuit c = load_netlist(netlist_path);
    if (point_tokens.size() != c.nvars()) {
      throw ArityError("point has " + std::to_string(point_tokens.size()) + " values, circuit has nvars=" +
                       std::to_string(c.nvars()));
    }
    std::vector<Integer> point;
    for (const auto& tok : point_tokens) point.emplace_back(textio::parse_i64(tok, "point value"));
    std::optional<std::uint64_t> p = prime_flag;
    if (!p && c.modulus()) p = c.modulus()->p;
    if (p) {
      if (!is_prime(*p)) throw ParameterError("--p must be prime");
      std::vector<std::uint64_t> residues;
      for (const auto& v : point) residues.push_back(static_cast<std::uint64_t>(normalize_mod(v, *p)));
      for (auto v : evaluate_mod(over_prime(c, PrimeModulus{*p, std::nullopt}), residues)) std::cout << v << '\n';
    } else {
      for (const auto& v : evaluate(c, std::span<const Integer>(point))) std::cout << v.str() << '\n';
    }
    return kExitOk;
  }

  if (*build_cmd) {
    const std::size_t want = construction == "interval" || construction == "greedy" || construction == "compose" ? 3 : 2;
    if (construction != "code" && want == 2) throw UsageError("unknown construction '" + construction + "'");
    if (splitter_args.size() != want) {
      throw UsageError(construction + " takes " + std::to_string(want) + " numeric arguments");
    }
    const auto& a = splitter_args;
    SplitterFamily h;
    if (construction == "code") h = build_code_splitter(a[0], a[1]);
    if (construction == "interval") h = build_interval_splitter(a[0], a[1], a[2]);
    if (construction == "greedy") h = build_greedy_splitter(a[0], a[1], a[2]);
    if (construction == "compose") h = compose_splitter(a[0], a[1], a[2]);
    emit(out_path, [&](std::ostream& out) { write_splitter(out, h); });
    if (!out_path.empty()) {
      std::cout << "splitter " << construction << " n=" << h.n << " k=" << h.k << " range=" << h.range
                << " size=" << h.size() << '\n';
    }
    return kExitOk;
  }

  if (*sverify_cmd) {
    auto in = open_input(splitter_path);
    const SplitterFamily h = read_splitter(in);
    const SplitterKind mode = mode_arg.empty() ? h.kind : parse_mode(mode_arg);
    const SplitterCheck r = verify_splitter(h, mode);
    if (r.ok) {
      std::cout << "ok size=" << h.size() << '\n';
      return kExitOk;
    }
    std::cout << "fail witness=";
    for (std::size_t i = 0; i < r.witness.size(); ++i) std::cout << (i ? "," : "") << r.witness[i];
    std::cout << '\n';
    return kExitReject;
  }

  if (*pipeline_cmd) {
    PipelineOptions opt;
    opt.params.problem = problem_or_usage(problem_tag_arg);
    opt.prime_policy = prime_policy == "svar" ? PrimePolicy::SVar : PrimePolicy::Count;
    opt.jobs = jobs;
    std::vector<std::string> params;
    std::vector<std::string> files;
    for (const auto& tok : pipeline_tokens) (is_param_token(tok) ? params : files).push_back(tok);
    apply_params(opt.params, params, theta_flag);
    if (!candidate_path.empty()) opt.candidate = load_netlist(candidate_path);
    std::vector<Instance> instances;
    for (const auto& path : files) instances.push_back(load_instance(opt.params.problem, path));
    const PipelineReport r = run_pipeline(opt, instances, files);
    write_report(std::cout, r, timings);
    return r.verified ? kExitOk : kExitReject;
  }

  if (*selftest_cmd) {
    const auto& scopes = selftest_scopes();
    if (std::find(scopes.begin(), scopes.end(), scope) == scopes.end()) {
      throw UsageError("unknown selftest scope '" + scope + "'");
    }
    return run_selftest(scope, seed, std::cout) ? kExitOk : 1;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "polyform: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "polyform: parameter error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const FormatError& e) {
    std::cerr << "polyform: malformed input: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const ArityError& e) {
    std::cerr << "polyform: malformed input: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const IncompatibleRingError& e) {
    std::cerr << "polyform: malformed input: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const ContractError& e) {
    std::cerr << "polyform: malformed input: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "polyform: " << e.what() << '\n';
    return 1;
  }
}
