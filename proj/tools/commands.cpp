// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "ndpp/coreset.hpp"
#include "ndpp/downup.hpp"
#include "ndpp/error.hpp"
#include "ndpp/exchange.hpp"
#include "ndpp/instances.hpp"
#include "ndpp/localsearch.hpp"
#include "ndpp/parallel.hpp"
#include "ndpp/random.hpp"
#include "ndpp/report.hpp"

namespace ndpp::app {
namespace {

struct Options {
  std::string kind;
  std::string kernel;
  std::string out;
  std::string init = "induced";
  std::string suite = "all";
  int n = 0;
  int d = 0;
  int k = 0;
  int r = 2;
  int parts = 3;
  int fields = 5;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  double zeta = 0.5;
  double skew = 1.0;
  std::vector<double> c;
  std::vector<double> x;
  bool identity = false;
  bool oracle = false;
  bool dense = false;
  bool detail = false;
};

struct SuiteResult {
  Json json;
  bool passed = true;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string join_command(const std::vector<std::string>& args) {
  std::string out;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (i > 1) out += ' ';
    out += args[i];
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void emit(const Json& report, const Options& opt, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out);
  if (!file) throw UsageError("cannot write " + opt.out);
  file << text;
}

Kernel load_kernel(const Options& opt) {
  if (opt.kernel.empty()) throw UsageError("--kernel is required");
  return read_kernel_file(opt.kernel);
}

void check_k(const Kernel& kern, int k) {
  if (k < 1 || k > kern.n()) {
    throw UsageError("--k must lie in [1, " + std::to_string(kern.n()) + "]");
  }
}

Json instance_json(const Options& opt, const Kernel& kern) {
  return {{"kernel", opt.kernel}, {"n", kern.n()}, {"k", opt.k},
          {"low_rank", kern.has_low_rank()}};
}

bool is_symmetric(const Kernel& kern) {
  const double tol = 1e-12 * (1.0 + kern.max_abs());
  return (kern.entries() - kern.entries().transpose()).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------- gen

int cmd_gen(const Options& opt, const std::string& command, std::ostream& out,
            std::ostream& err) {
  Kernel kern = [&] {
    if (opt.kind == "random-npsd") {
      if (opt.n < 1) throw UsageError("random-npsd needs --n >= 1");
      return random_npsd(opt.n, opt.d, opt.seed, opt.skew);
    }
    if (opt.kind == "sym-psd") {
      if (opt.n < 1) throw UsageError("sym-psd needs --n >= 1");
      return opt.identity ? identity_kernel(opt.n) : random_sym_psd(opt.n, opt.d, opt.seed);
    }
    if (opt.kind == "lowrank-npsd") {
      if (opt.n < 1 || opt.d < 1) throw UsageError("lowrank-npsd needs --n >= 1 and --d >= 1");
      return random_lowrank_npsd(opt.n, opt.d, opt.seed);
    }
    if (opt.kind == "skew-block") {
      try {
        return skew_block(opt.c, opt.x);
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
    }
    throw UsageError("unknown --kind " + opt.kind);
  }();

  std::ostringstream text;
  write_kernel(text, kern, opt.dense);
  err << "gen: " << opt.kind << " n=" << kern.n()
      << (kern.has_low_rank() ? " (low-rank)" : "") << "\n";
  if (opt.out.empty()) {
    out << text.str();
    return kOk;
  }
  std::ofstream file(opt.out);
  if (!file) throw UsageError("cannot write " + opt.out);
  file << text.str();
  Json report = {{"command", command},
                 {"seed", opt.seed},
                 {"instance", {{"kind", opt.kind}, {"n", kern.n()},
                               {"low_rank", kern.has_low_rank()}, {"file", opt.out}}}};
  out << report.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- map

int cmd_map(const Options& opt, const std::string& command, std::ostream& out,
            std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const Kernel kern = load_kernel(opt);
  check_k(kern, opt.k);
  SearchConfig cfg;
  cfg.r = opt.r;
  cfg.zeta = opt.zeta;
  try {
    cfg.validate(opt.k);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (opt.init != "induced" && opt.init != "standard") {
    throw UsageError("--init must be induced or standard");
  }
  const InitMethod init = opt.init == "standard" ? InitMethod::kStandard : InitMethod::kInduced;
  const MapReport rep = map_inference(kern, opt.k, cfg, init);

  Json results = to_json(rep);
  int code = kOk;
  if (opt.oracle) {
    const KernelDistribution mu(kern, opt.k);
    const MapOptimum best = brute_force_map(mu);
    const double bound = std::pow(std::pow(opt.k, 4) / opt.zeta, opt.k);
    const bool ok = bound * rep.value >= best.value * (1.0 - 1e-9);
    results["oracle"] = {{"set", to_json(best.set)},
                         {"value", number(best.value)},
                         {"ratio", number(rep.value > 0.0 ? best.value / rep.value
                                                          : std::numeric_limits<double>::infinity())},
                         {"bound", number(bound)},
                         {"bound_ok", ok}};
    if (!ok) code = kVerificationFailed;
  }
  Json report = {{"command", command},
                 {"seed", opt.seed},
                 {"instance", instance_json(opt, kern)},
                 {"parameters", {{"r", opt.r}, {"zeta", opt.zeta}, {"init", opt.init}}},
                 {"results", results},
                 {"timing", {{"seconds", seconds_since(start)}}}};
  emit(report, opt, out);
  err << "map: k=" << opt.k << " r=" << opt.r << " set=" << to_string(rep.set)
      << " value=" << rep.value << " iterations=" << rep.iterations << "\n";
  return code;
}

// ---------------------------------------------------------------- verify

inline constexpr std::uint64_t kMaxExchangeSets = 500;

SuiteResult exchange_suite(const Kernel& kern, const Options& opt) {
  const int k = opt.k;
  if (binomial(kern.n(), k) > kMaxExchangeSets) {
    throw CapacityError("exchange suite needs C(n,k) <= 500");
  }
  const KernelDistribution base(kern, k);
  const TabulatedDistribution mu(base);
  const auto sets = all_subsets(kern.n(), k);
  const bool symmetric = is_symmetric(kern);
  const double k2 = static_cast<double>(k) * k;

  struct Row {
    std::uint64_t pairs = 0, pair_fail = 0, sum_fail = 0, hurwitz_fail = 0, r1_fail = 0;
    double max_pair = 0.0, max_weak = 0.0, max_strong = 0.0;
    std::vector<Json> details;
  };
  std::vector<Row> rows(sets.size());
  parallel_for(sets.size(), [&](std::size_t a) {
    Row& row = rows[a];
    for (std::size_t b = a + 1; b < sets.size(); ++b) {
      const auto& s = sets[a];
      const auto& t = sets[b];
      ++row.pairs;
      const ExchangeReport pe = check_pair_exchange(mu, s, t, 2);
      if (!pe.passed) ++row.pair_fail;
      if (!pe.sum_bound_holds) ++row.sum_fail;
      row.max_pair = std::max(row.max_pair, pe.measured_beta);
      if (!hurwitz_coeff_check(exchange_polynomial(mu, s, t), true)) ++row.hurwitz_fail;
      if (symmetric && !check_pair_exchange(mu, s, t, 1, k2).passed) ++row.r1_fail;
      if (mu.value(s) > 0.0 && mu.value(t) > 0.0) {
        row.max_weak = std::max(row.max_weak, check_weak_exchange(mu, s, t, 2).measured_beta);
        row.max_strong =
            std::max(row.max_strong, check_strong_basis_exchange(mu, s, t).measured_beta);
      }
      if (opt.detail) row.details.push_back(to_json(pe));
    }
  });
  Row total;
  Json details = Json::array();
  for (auto& row : rows) {
    total.pairs += row.pairs;
    total.pair_fail += row.pair_fail;
    total.sum_fail += row.sum_fail;
    total.hurwitz_fail += row.hurwitz_fail;
    total.r1_fail += row.r1_fail;
    total.max_pair = std::max(total.max_pair, row.max_pair);
    total.max_weak = std::max(total.max_weak, row.max_weak);
    total.max_strong = std::max(total.max_strong, row.max_strong);
    for (auto& d : row.details) details.push_back(std::move(d));
  }
  SuiteResult res;
  res.passed = total.pair_fail == 0 && total.hurwitz_fail == 0 && total.r1_fail == 0;
  res.json = {{"pairs", total.pairs},
              {"beta", std::pow(k, 4)},
              {"pair_exchange_failures", total.pair_fail},
              {"sum_bound_failures", total.sum_fail},
              {"hurwitz_failures", total.hurwitz_fail},
              {"symmetric", symmetric},
              {"radius_one_failures", total.r1_fail},
              {"max_pair_beta", number(total.max_pair)},
              {"max_weak_beta", number(total.max_weak)},
              {"max_strong_beta", number(total.max_strong)},
              {"passed", res.passed}};
  if (opt.detail) res.json["reports"] = std::move(details);
  return res;
}

bool chain_passes(const ChainDiagnostics& d, const ConductanceResult& phi) {
  return d.row_sum_error <= 1e-12 && d.reversibility_error <= 1e-10 &&
         d.stationarity_error <= 1e-10 && d.min_eigenvalue >= -1e-9 &&
         d.max_imag_part <= 1e-7 && phi.cheeger_ok && d.gap > 0.0;
}

SuiteResult walk_suite(const Kernel& kern, const Options& opt) {
  const int k = opt.k;
  const KernelDistribution mu(kern, k);
  std::vector<int> levels;
  for (int l : {k - 1, k - 2}) {
    if (l >= 0 && std::find(levels.begin(), levels.end(), l) == levels.end()) levels.push_back(l);
  }
  Rng rng(opt.seed);
  std::vector<FieldVector> fields(static_cast<std::size_t>(std::max(opt.fields, 0)));
  for (auto& f : fields) {
    f.resize(static_cast<std::size_t>(kern.n()));
    for (double& w : f) w = std::exp(rng.uniform(-1.0, 1.0));
  }

  SuiteResult res;
  Json chains = Json::array();
  std::uint64_t failures = 0;
  auto run_chain = [&](const SetDistribution& dist, int l, int field) {
    const ChainMatrix c = build_downup(dist, l);
    const ChainDiagnostics d = diagnose(c);
    const ConductanceResult phi = conductance(c);
    Json j = chain_json(c, d, phi);
    j["field"] = field < 0 ? Json(nullptr) : Json(field);
    const bool ok = chain_passes(d, phi);
    j["passed"] = ok;
    if (!ok) ++failures;
    chains.push_back(std::move(j));
    return c;
  };
  for (int l : levels) {
    const ChainMatrix c = run_chain(mu, l, -1);
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const FieldDistribution tilted(mu, fields[f]);
      run_chain(tilted, l, static_cast<int>(f));
    }
    if (opt.steps > 0 && l == levels.front()) {
      const auto top = std::max_element(c.pi.begin(), c.pi.end()) - c.pi.begin();
      const auto traj = sample_walk(mu, c.states[top], l, opt.steps, opt.seed);
      const double tv = tv_distance(empirical_density(c, traj), c.pi);
      const bool ok = tv < 0.05;
      if (!ok) ++failures;
      res.json["sampler"] = {{"l", l}, {"steps", opt.steps}, {"tv", tv}, {"passed", ok}};
    }
  }
  res.passed = failures == 0;
  res.json["chains"] = std::move(chains);
  res.json["failures"] = failures;
  res.json["passed"] = res.passed;
  return res;
}

SuiteResult coreset_suite(const Kernel& kern, const Options& opt) {
  const KernelDistribution mu(kern, opt.k);
  IndexSet ground(static_cast<std::size_t>(kern.n()));
  for (int i = 0; i < kern.n(); ++i) ground[i] = i;
  const PartitionPlan plan = make_plan(mu, random_partition(ground, opt.parts, opt.seed), opt.zeta);
  const CoresetReport rep = compose_and_report(mu, plan);
  SuiteResult res;
  const bool certified = std::all_of(plan.certified.begin(), plan.certified.end(),
                                     [](bool b) { return b; });
  res.passed = rep.bound_ok && rep.chain_ok && certified;
  res.json = to_json(rep);
  res.json["certified"] = certified;
  res.json["passed"] = res.passed;
  return res;
}

int cmd_verify(const Options& opt, const std::string& command, std::ostream& out,
               std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const Kernel kern = load_kernel(opt);
  check_k(kern, opt.k);
  if (!(opt.zeta > 0.0 && opt.zeta < 1.0)) throw UsageError("--zeta must lie in (0, 1)");
  const std::vector<std::string> all = {"exchange", "walk", "coreset"};
  std::vector<std::string> suites;
  if (opt.suite == "all") {
    suites = all;
  } else if (std::find(all.begin(), all.end(), opt.suite) != all.end()) {
    suites = {opt.suite};
  } else {
    throw UsageError("--suite must be exchange, walk, coreset or all");
  }

  Json results = Json::object();
  int passed = 0, failed = 0, capacity = 0, infeasible = 0;
  for (const auto& name : suites) {
    try {
      SuiteResult r = name == "exchange" ? exchange_suite(kern, opt)
                      : name == "walk"   ? walk_suite(kern, opt)
                                         : coreset_suite(kern, opt);
      (r.passed ? passed : failed) += 1;
      results[name] = std::move(r.json);
    } catch (const CapacityError& e) {
      ++capacity;
      results[name] = {{"error", "capacity"}, {"message", e.what()}};
    } catch (const InfeasibleError& e) {
      ++infeasible;
      results[name] = {{"error", "infeasible"}, {"message", e.what()}};
    }
    err << "verify: " << name << " "
        << (results[name].contains("error") ? results[name]["error"].get<std::string>()
            : results[name]["passed"].get<bool>() ? "PASS"
                                                   : "FAIL")
        << "\n";
  }
  Json report = {{"command", command},
                 {"seed", opt.seed},
                 {"instance", instance_json(opt, kern)},
                 {"parameters", {{"zeta", opt.zeta}, {"suite", opt.suite}}},
                 {"summary", {{"passed", passed}, {"failed", failed},
                              {"capacity_errors", capacity}, {"infeasible", infeasible}}},
                 {"results", results},
                 {"timing", {{"seconds", seconds_since(start)}}}};
  emit(report, opt, out);
  if (failed > 0) return kVerificationFailed;
  if (capacity > 0) return kCapacity;
  if (infeasible > 0) return kInfeasible;
  return kOk;
}

int report_error(const std::string& command, const std::string& type, const std::string& what,
                 int code, std::ostream& out, std::ostream& err) {
  const Json report = {{"command", command}, {"error", {{"type", type}, {"message", what}}}};
  out << report.dump(2) << "\n";
  err << "error: " << what << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"MAP inference and verification for nonsymmetric PSD determinantal point processes"};
  app.require_subcommand(1);
  app.add_option("--threads", opt.threads, "Worker thread cap (0: hardware)");

  auto* gen = app.add_subcommand("gen", "Generate a kernel file");
  gen->add_option("--kind", opt.kind, "random-npsd | skew-block | sym-psd | lowrank-npsd")
      ->required()
      ->check(CLI::IsMember({"random-npsd", "skew-block", "sym-psd", "lowrank-npsd"}));
  gen->add_option("--n", opt.n, "Ground-set size");
  gen->add_option("--d", opt.d, "Rank (0: full)");
  gen->add_option("--seed", opt.seed, "Random seed");
  gen->add_option("--skew", opt.skew, "Scale of the skew-symmetric part");
  gen->add_option("--c", opt.c, "Skew-block diagonal values")->delimiter(',');
  gen->add_option("--x", opt.x, "Skew-block off-diagonal values")->delimiter(',');
  gen->add_flag("--identity", opt.identity, "sym-psd: the identity kernel");
  gen->add_flag("--dense", opt.dense, "Write dense entries even for low-rank kernels");
  gen->add_option("--out", opt.out, "Kernel output file (default: stdout)");

  auto* map = app.add_subcommand("map", "Greedy plus local search MAP inference");
  map->add_option("--kernel", opt.kernel, "Kernel file")->required();
  map->add_option("--k", opt.k, "Subset size")->required();
  map->add_option("--r", opt.r, "Swap radius");
  map->add_option("--zeta", opt.zeta, "Acceptance threshold in (0, 1)");
  map->add_option("--seed", opt.seed, "Seed echoed into the report");
  map->add_option("--init", opt.init, "Initialization: induced | standard");
  map->add_flag("--oracle", opt.oracle, "Cross-check against brute force");
  map->add_option("--out", opt.out, "JSON output file (default: stdout)");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--kernel", opt.kernel, "Kernel file")->required();
  verify->add_option("--k", opt.k, "Subset size")->required();
  verify->add_option("--suite", opt.suite, "exchange | walk | coreset | all");
  verify->add_option("--zeta", opt.zeta, "Local-max threshold for core-sets");
  verify->add_option("--seed", opt.seed, "Seed for fields, partitions and sampling");
  verify->add_option("--parts", opt.parts, "Number of core-set parts");
  verify->add_option("--fields", opt.fields, "Random external fields per walk level");
  verify->add_option("--steps", opt.steps, "Sampler steps (0: skip the sampler check)");
  verify->add_flag("--detail", opt.detail, "Include one report per exchange pair");
  verify->add_option("--out", opt.out, "JSON output file (default: stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const std::string command = join_command(args);
  try {
    set_max_threads(opt.threads);
    if (gen->parsed()) return cmd_gen(opt, command, out, err);
    if (map->parsed()) return cmd_map(opt, command, out, err);
    return cmd_verify(opt, command, out, err);
  } catch (const UsageError& e) {
    return report_error(command, "usage", e.what(), kUsage, out, err);
  } catch (const InfeasibleError& e) {
    return report_error(command, "infeasible", e.what(), kInfeasible, out, err);
  } catch (const CapacityError& e) {
    return report_error(command, "capacity", e.what(), kCapacity, out, err);
  } catch (const IncompleteSearchError& e) {
    return report_error(command, "incomplete_search", e.what(), kVerificationFailed, out, err);
  } catch (const DomainError& e) {
    return report_error(command, "domain", e.what(), kUsage, out, err);
  } catch (const Error& e) {
    return report_error(command, "numerical", e.what(), kVerificationFailed, out, err);
  } catch (const std::exception& e) {
    return report_error(command, "io", e.what(), kUsage, out, err);
  }
}

}  // namespace ndpp::app
