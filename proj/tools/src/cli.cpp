// Copyright 2026 The Unlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unlearn_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "unlearn/errors.hpp"
#include "unlearn/json_io.hpp"
#include "unlearn/measurement_tree.hpp"
#include "unlearn/povm.hpp"
#include "unlearn/recovery.hpp"
#include "unlearn/rng.hpp"
#include "unlearn/teleport.hpp"

namespace unlearn::cli {
namespace {

using io::Json;

constexpr const char* kSeedHelp =
    "Seeds: every random draw comes from a counter-based splitmix64 stream.\n"
    "Trial i of a command uses the stream keyed by\n"
    "  derive_seed(seed, i) = mix(seed + mix(i + 0x9E3779B97F4A7C15))\n"
    "where mix is the splitmix64 finalizer. teleport-sweep keys row r by\n"
    "derive_seed(seed, r) and run i of that row by derive_seed(row_seed, i).\n"
    "Identical command, input and seed give byte-identical output.\n"
    "\n"
    "Exit status: 0 success, 2 validation or domain failure, 3 input parse failure.";

// Failure that maps directly to an exit status.
struct CommandFailure {
  ExitCode code;
  std::string message;
};

struct Report {
  std::string text;
  ExitCode code = ExitCode::kOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CommandFailure{ExitCode::kParseFailure, "cannot read input file '" + path + "'"};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

io::InputDocument load_input(const RunConfig& cfg) {
  if (!cfg.input_path) {
    throw CommandFailure{ExitCode::kParseFailure, cfg.command + " needs --input"};
  }
  const std::string text = read_file(*cfg.input_path);
  try {
    return io::parse_document(text);
  } catch (const ParseError& e) {
    std::string where = *cfg.input_path;
    if (e.line() > 0) {
      where += ":" + std::to_string(e.line()) + ":" + std::to_string(e.column());
    }
    throw CommandFailure{ExitCode::kParseFailure, where + ": " + e.what()};
  }
}

Povm load_operators(const RunConfig& cfg) {
  io::InputDocument doc = load_input(cfg);
  if (!doc.operators) {
    throw CommandFailure{ExitCode::kParseFailure, cfg.command + " expects an operator set, not a tree"};
  }
  return std::move(*doc.operators);
}

OutputFormat format_or(const RunConfig& cfg, OutputFormat fallback) { return cfg.format.value_or(fallback); }

void require_json(const RunConfig& cfg) {
  if (format_or(cfg, OutputFormat::kJson) != OutputFormat::kJson) {
    throw CommandFailure{ExitCode::kDomainFailure, cfg.command + " only writes json"};
  }
}

Json header(const RunConfig& cfg) {
  return Json{{"command", cfg.command}, {"tolerance", cfg.tolerance}, {"seed", cfg.seed}};
}

std::string csv_comment(const RunConfig& cfg, const std::string& extra) {
  return "# command=" + cfg.command + " tolerance=" + io::format_number(cfg.tolerance) +
         " seed=" + std::to_string(cfg.seed) + extra + "\n";
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Report cmd_validate(const RunConfig& cfg) {
  require_json(cfg);
  const io::InputDocument doc = load_input(cfg);
  Json j = header(cfg);
  bool passed = false;
  if (doc.operators) {
    const ValidationReport r = validate_povm(*doc.operators, cfg.tolerance);
    passed = r.passed;
    j["report"] = io::to_json(r);
    j["leaves"] = io::to_json(summarize_leaves(attach_povm(TreeNode::root(doc.operators->dim()), *doc.operators)));
  } else {
    const TreeValidationReport r = validate_tree(*doc.tree, cfg.tolerance);
    passed = r.passed;
    j["report"] = io::to_json(r);
    j["leaves"] = io::to_json(summarize_leaves(*doc.tree));
  }
  j["passed"] = passed;
  return {dump(j), passed ? ExitCode::kOk : ExitCode::kDomainFailure};
}

Report cmd_plan(const RunConfig& cfg) {
  require_json(cfg);
  const Povm p = load_operators(cfg);
  Json plans = Json::array();
  for (const auto& k : p.kraus_ops()) {
    RecoveryPlan plan = [&] {
      try {
        return procrustean_plan(k);
      } catch (const UnrecoverableBranchError& e) {
        throw CommandFailure{ExitCode::kDomainFailure, "unrecoverable branch '" + k.label() + "': " + e.what()};
      }
    }();
    const double bound = success_bound(k);
    Json entry = io::to_json(plan);
    entry["label"] = k.label();
    entry["bound"] = bound;
    entry["saturates_bound"] = std::abs(plan.success_probability - bound) <= cfg.tolerance;
    entry["unitary_witness"] = unitary_witness(k, cfg.tolerance).has_value();
    plans.push_back(std::move(entry));
  }
  Json j = header(cfg);
  j["plans"] = std::move(plans);
  if (validate_povm(p, cfg.tolerance).passed) {
    j["bound"] = io::to_json(multi_outcome_recovery_probability(p));
  }
  return {dump(j)};
}

Report cmd_filter_trace(const RunConfig& cfg) {
  FilterTrace trace;
  double limit = 0.0;
  try {
    trace = partial_filter_iterate(cfg.a, cfg.b, cfg.max_iter, cfg.tolerance);
    limit = partial_filter_limit(cfg.a, cfg.b);
  } catch (const DomainError& e) {
    throw CommandFailure{ExitCode::kDomainFailure, e.what()};
  }
  if (format_or(cfg, OutputFormat::kCsv) == OutputFormat::kCsv) {
    const std::string meta = " a=" + io::format_number(cfg.a) + " b=" + io::format_number(cfg.b) +
                             " max_iter=" + std::to_string(cfg.max_iter) +
                             " converged=" + (trace.converged ? "true" : "false") +
                             " limit=" + io::format_number(limit);
    return {csv_comment(cfg, meta) + io::trace_to_csv(trace)};
  }
  Json j = header(cfg);
  j["a"] = cfg.a;
  j["b"] = cfg.b;
  j["max_iter"] = cfg.max_iter;
  j["limit"] = limit;
  j["trace"] = io::to_json(trace);
  return {dump(j)};
}

Report cmd_bound_check(const RunConfig& cfg) {
  require_json(cfg);
  const Povm p = cfg.input_path ? load_operators(cfg)
                                : Povm({KrausOperator(ComplexMatrix::diagonal({0.8, 0.6}), "k0")});
  Json reports = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    // Each operator gets its own seed stream.
    const OracleReport r = verify_bound_bruteforce(p[i], cfg.trials, derive_seed(cfg.seed, i));
    ok = ok && r.bound_holds && r.grid_attains_bound;
    Json entry = io::to_json(r);
    entry["label"] = p[i].label();
    reports.push_back(std::move(entry));
  }
  Json j = header(cfg);
  j["trials"] = cfg.trials;
  j["reports"] = std::move(reports);
  j["passed"] = ok;
  return {dump(j), ok ? ExitCode::kOk : ExitCode::kDomainFailure};
}

Report cmd_teleport_sweep(const RunConfig& cfg) {
  std::vector<double> thetas = teleport::theta_grid(cfg.theta_points);
  thetas.insert(thetas.end(), cfg.extra_thetas.begin(), cfg.extra_thetas.end());
  std::vector<teleport::SweepRow> rows;
  try {
    rows = teleport::sweep(thetas, cfg.trials, cfg.seed);
  } catch (const DomainError& e) {
    throw CommandFailure{ExitCode::kDomainFailure, e.what()};
  }
  if (format_or(cfg, OutputFormat::kCsv) == OutputFormat::kCsv) {
    return {csv_comment(cfg, " runs=" + std::to_string(cfg.trials)) + io::sweep_to_csv(rows)};
  }
  Json j = header(cfg);
  j["rows"] = io::to_json(rows);
  return {dump(j)};
}

// Measures the operator set on the maximally mixed state, then applies the
// unitary undo or Procrustean filter to the observed branch.
Report cmd_simulate(const RunConfig& cfg) {
  require_json(cfg);
  const Povm p = load_operators(cfg);
  const ValidationReport v = validate_povm(p, cfg.tolerance);
  if (!v.passed) {
    throw CommandFailure{ExitCode::kDomainFailure, "operator set is not complete (residual " +
                                                       io::format_number(v.completeness_residual) + ")"};
  }
  const DensityOperator rho = DensityOperator::maximally_mixed(p.dim());

  std::vector<std::optional<UnitaryWitness>> witnesses;
  std::vector<std::optional<RecoveryPlan>> plans;
  for (const auto& k : p.kraus_ops()) {
    witnesses.push_back(unitary_witness(k, cfg.tolerance));
    plans.emplace_back();
    if (!witnesses.back() && singular_values(k.matrix()).back() > kRankFloor) {
      plans.back() = procrustean_plan(k);
    }
  }

  std::vector<std::size_t> observed(p.size(), 0);
  std::vector<std::size_t> recovered(p.size(), 0);
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    CounterRng rng(derive_seed(cfg.seed, i));
    const SampledOutcome s = sample_outcome(p, rho, rng);
    ++observed[s.index];
    if (witnesses[s.index]) {
      ++recovered[s.index];
    } else if (plans[s.index]) {
      const Povm filter({plans[s.index]->success_kraus, plans[s.index]->failure_kraus});
      if (sample_outcome(filter, s.state, rng).index == 0) {
        ++recovered[s.index];
      }
    }
  }

  const double n = static_cast<double>(cfg.trials);
  Json outcomes = Json::array();
  std::size_t total = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    total += recovered[j];
    outcomes.push_back({{"label", p[j].label()},
                        {"correction", witnesses[j] ? "unitary" : (plans[j] ? "filter" : "none")},
                        {"observed_fraction", static_cast<double>(observed[j]) / n},
                        {"recovered_fraction", static_cast<double>(recovered[j]) / n},
                        {"recovered_analytic", success_bound(p[j])}});
  }
  const double bound = multi_outcome_recovery_probability(p).total_recoverable;
  const double empirical = static_cast<double>(total) / n;
  Json j = header(cfg);
  j["trials"] = cfg.trials;
  j["state"] = "maximally-mixed";
  j["outcomes"] = std::move(outcomes);
  j["recovered_fraction"] = empirical;
  j["recovered_analytic"] = bound;
  j["sigma"] = std::sqrt(bound * (1.0 - bound) / n);
  return {dump(j)};
}

void check_config(const RunConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) {
    throw CommandFailure{ExitCode::kDomainFailure, "--tol must be positive"};
  }
  if (cfg.max_iter < 1) {
    throw CommandFailure{ExitCode::kDomainFailure, "--max-iter must be at least 1"};
  }
  if (cfg.trials < 1) {
    throw CommandFailure{ExitCode::kDomainFailure, "--trials must be at least 1"};
  }
}

Report dispatch(const RunConfig& cfg) {
  check_config(cfg);
  if (cfg.command == "validate") return cmd_validate(cfg);
  if (cfg.command == "plan") return cmd_plan(cfg);
  if (cfg.command == "filter-trace") return cmd_filter_trace(cfg);
  if (cfg.command == "bound-check") return cmd_bound_check(cfg);
  if (cfg.command == "teleport-sweep") return cmd_teleport_sweep(cfg);
  return cmd_simulate(cfg);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Simulate generalized measurements and synthesize corrections that undo their information gain.",
               "unlearn"};
  app.footer(kSeedHelp);
  app.require_subcommand(1);

  std::string format;
  app.add_option("--input", cfg.input_path, "Operator-set or tree JSON file");
  app.add_option("--output", cfg.output_path, "Write the report here instead of standard output");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  app.add_option("--tol,--tolerance", cfg.tolerance, "Numerical tolerance")->capture_default_str();
  app.add_option("--max-iter", cfg.max_iter, "Partial filtering step budget")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Random trials (bound-check, simulate) or runs per angle (teleport-sweep)")
      ->capture_default_str();
  app.add_option("--a", cfg.a, "Larger diagonal entry of the filtered operator")->capture_default_str();
  app.add_option("--b", cfg.b, "Smaller diagonal entry of the filtered operator")->capture_default_str();
  app.add_option("--theta-points", cfg.theta_points, "Evenly spaced angles on [0.01, pi/2]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--theta", cfg.extra_thetas, "Extra angle in radians appended to the sweep (repeatable)")
      ->allow_extra_args(false);

  const std::vector<std::pair<const char*, const char*>> commands{
      {"validate", "Check completeness and positivity of an operator set or tree"},
      {"plan", "Procrustean correction for every operator in the input"},
      {"filter-trace", "Iterate partial filtering of diag(a, b)"},
      {"bound-check", "Random-strategy oracle for the single-shot success bound"},
      {"teleport-sweep", "Teleportation success over a grid of entanglement angles"},
      {"simulate", "Sample the operator set and its corrections on the maximally mixed state"},
  };
  for (const auto& [name, description] : commands) {
    app.add_subcommand(name, description)->fallthrough();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e_out;
    const int code = app.exit(e, o, e_out);
    out << o.str();
    err << e_out.str();
    return code == 0 ? 0 : static_cast<int>(ExitCode::kDomainFailure);
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (!format.empty()) {
    cfg.format = format == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
  }

  try {
    const Report r = dispatch(cfg);
    if (cfg.output_path) {
      std::ofstream file(*cfg.output_path, std::ios::binary);
      if (!file || !(file << r.text)) {
        err << "unlearn: cannot write '" << *cfg.output_path << "'\n";
        return static_cast<int>(ExitCode::kDomainFailure);
      }
    } else {
      out << r.text;
    }
    if (r.code != ExitCode::kOk) {
      err << "unlearn: " << cfg.command << " failed\n";
    }
    return static_cast<int>(r.code);
  } catch (const CommandFailure& f) {
    err << "unlearn: " << f.message << "\n";
    return static_cast<int>(f.code);
  } catch (const Error& e) {
    err << "unlearn: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kDomainFailure);
  }
}

}  // namespace unlearn::cli
