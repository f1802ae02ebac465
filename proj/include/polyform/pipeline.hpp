#pragma once

#include <atomic>
#include <mutex>
#include <chrono>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "polyform/circuits.hpp"
#include "polyform/formulations.hpp"

namespace polyform {

enum class PrimePolicy { Count, SVar };

struct PipelineOptions {
  Params params;
  std::optional<ArithmeticCircuit> candidate;
  PrimePolicy prime_policy = PrimePolicy::Count;
  unsigned jobs = 1;
};

struct InstanceDecision {
  std::string label;
  bool yes = false;
  std::uint64_t value = 0;  // P(phi(x)) mod p
};

struct StageTiming {
  std::string stage;
  double ms = 0;
};

struct PipelineReport {
  Params params;
  std::size_t instances = 0;
  std::uint64_t p = 0;
  std::size_t s = 0;
  std::uint32_t delta = 0;
  std::size_t monomials = 0;
  std::size_t circuit_size = 0;
  bool verified = false;
  std::optional<Monomial> witness;
  std::vector<InstanceDecision> decisions;
  std::vector<StageTiming> timings;
};

inline std::string monomial_text(const Monomial& m) {
  if (m.is_constant()) return "1";
  std::string out;
  for (const Power& pw : m.powers()) {
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(pw.var) + '^' + std::to_string(pw.exp);
  }
  return out;
}

/// Dyadic exponent for the modulus. Count: smallest t with 2^{t+1} > 2 * #monomials, which keeps
/// every value below p/2 because P has coefficient-one terms. SVar: t = s, the 2^s value bound.
inline unsigned pipeline_prime_exponent(PrimePolicy policy, std::size_t monomials, std::size_t s) {
  if (policy == PrimePolicy::SVar) {
    if (s > kMaxDyadicExponent) {
      throw ParameterError("prime policy svar needs s <= " + std::to_string(kMaxDyadicExponent) + ", got s=" +
                           std::to_string(s));
    }
    return static_cast<unsigned>(s);
  }
  unsigned t = 0;
  while ((std::uint64_t{1} << t) <= monomials) ++t;
  return t;
}

/// Formulate once, pick p, build or load a circuit, verify it, then decide every instance by
/// evaluating the verified circuit mod p. A reject leaves `decisions` empty.
inline PipelineReport run_pipeline(const PipelineOptions& opt, const std::vector<Instance>& instances,
                                   const std::vector<std::string>& labels) {
  using clock = std::chrono::steady_clock;
  PipelineReport r;
  auto stage_start = clock::now();
  auto lap = [&](const char* name) {
    const auto now = clock::now();
    r.timings.push_back({name, std::chrono::duration<double, std::milli>(now - stage_start).count()});
    stage_start = now;
  };

  Params params = opt.params;
  for (const Instance& x : instances) {
    const Params completed = complete_params(params, x);
    if (&x == &instances.front()) {
      params = completed;
    } else if (completed != params) {
      throw ParameterError("pipeline instances must share their size parameters");
    }
  }
  const Formulation f = formulate(params);
  r.params = params;
  r.instances = instances.size();
  r.s = f.s();
  r.delta = f.delta;
  r.monomials = f.poly.size();
  lap("formulate");

  const PrimeModulus p = find_prime_in_dyadic_interval(pipeline_prime_exponent(opt.prime_policy, r.monomials, r.s));
  r.p = p.p;
  const SparsePolynomial target = reduce_mod(f.poly, p);
  lap("reduce");

  ArithmeticCircuit circuit;
  if (opt.candidate) {
    const ArithmeticCircuit& c = *opt.candidate;
    if (c.modulus() && c.modulus()->p != p.p) {
      throw ParameterError("candidate circuit is over Z_" + std::to_string(c.modulus()->p) + ", pipeline uses p=" +
                           std::to_string(p.p));
    }
    if (c.nvars() != f.s()) {
      throw ArityError("candidate circuit has nvars=" + std::to_string(c.nvars()) + ", formulation has s=" +
                       std::to_string(f.s()));
    }
    circuit = ArithmeticCircuit(c.nvars(), p, c.gates(), c.outputs());
  } else {
    circuit = sum_of_products_circuit(target);
  }
  r.circuit_size = circuit.size();
  lap("circuit");

  const VerifyResult v = verify_circuit(circuit, target, f.delta, p);
  r.verified = v.accepted;
  r.witness = v.witness;
  lap("verify");
  if (!v.accepted) return r;

  r.decisions.resize(instances.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    std::vector<std::uint64_t> point;
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      try {
        const Assignment a = assign(f, instances[i]);
        point.assign(a.begin(), a.end());
        const std::uint64_t value = evaluate_mod(circuit, point).front();
        r.decisions[i] = {i < labels.size() ? labels[i] : std::to_string(i), value != 0, value};
      } catch (...) {
        std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1U, std::min<unsigned>(opt.jobs, static_cast<unsigned>(instances.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  lap("solve");
  return r;
}

inline void write_report(std::ostream& out, const PipelineReport& r, bool timings) {
  out << "pipeline problem=" << problem_tag(r.params.problem) << " theta=" << r.params.theta
      << " instances=" << r.instances << " p=" << r.p << " s=" << r.s << " delta=" << r.delta
      << " monomials=" << r.monomials << " circuit_size=" << r.circuit_size
      << " verify=" << (r.verified ? "accept" : "reject") << '\n';
  if (!r.verified && r.witness) out << "witness " << monomial_text(*r.witness) << '\n';
  for (const auto& d : r.decisions) {
    out << "decision " << d.label << ' ' << (d.yes ? "yes" : "no") << " value=" << d.value << '\n';
  }
  if (timings) {
    for (const auto& t : r.timings) out << "timing " << t.stage << " ms=" << t.ms << '\n';
  }
}

}  // namespace polyform
