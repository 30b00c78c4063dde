// Copyright 2026 The racecars Authors.
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


#include "racecars/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "racecars/errors.hpp"
#include "racecars/experiment.hpp"
#include "racecars/verify.hpp"

namespace racecars {
namespace {

namespace fs = std::filesystem;

// Flag values as typed. Grid-capable flags stay strings so ablate and bench
// can read lists from the same names that run reads scalars from.
struct Args {
  std::string alg = "racecars";
  std::string fn = "ackley";
  std::string fn_external;
  std::string n = "50";
  std::string radius = "10";
  std::size_t budget = 0;  // 0: budget_factor * n
  std::size_t budget_factor = 30;
  std::size_t train_size = OptimizerConfig{}.train_size;
  std::size_t pos_size = OptimizerConfig{}.positive_size;
  double lambda = OptimizerConfig{}.lambda;
  std::string gamma = "0.95";
  std::string rho = "0.01";
  std::string replace = "worst";
  std::string exploit = "anchored";
  std::size_t exploit_coords = 0;
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  std::string out = "racecars-out";
  std::size_t workers = 1;
  bool ackley_shifted_cosine = false;
  double timeout = 60.0;
  std::string config;

  // verify
  std::size_t harness_runs = VerifyOptions{}.harness_runs;
  std::size_t bound_tuples = VerifyOptions{}.bound_tuples;
  std::size_t classifier_splits = VerifyOptions{}.classifier_splits;
};

double single_real(const std::string& text, const char* flag) {
  const auto v = parse_real_list(text);
  if (v.size() != 1) throw PreconditionError(fmt::format("{} takes one value here", flag));
  return v.front();
}

std::size_t single_size(const std::string& text, const char* flag) {
  const auto v = parse_size_list(text);
  if (v.size() != 1) throw PreconditionError(fmt::format("{} takes one value here", flag));
  return v.front();
}

template <class T>
T parse_or_throw(std::optional<T> v, const std::string& text, const char* what) {
  if (!v) throw PreconditionError(fmt::format("unknown {} '{}'", what, text));
  return *v;
}

// Spec from scalar flags; grid flags are overwritten by the caller per cell.
ExperimentSpec base_spec(const Args& a) {
  ExperimentSpec s;
  s.function = a.fn;
  s.external = a.fn_external;
  s.reps = a.reps;
  s.workers = a.workers;
  s.ackley_shifted_cosine = a.ackley_shifted_cosine;
  s.timeout = a.timeout;
  OptimizerConfig& c = s.config;
  c.train_size = a.train_size;
  c.positive_size = a.pos_size;
  c.lambda = a.lambda;
  c.replacement = parse_or_throw(parse_replacement(a.replace), a.replace, "replacement");
  c.exploit = parse_or_throw(parse_exploit_sampler(a.exploit), a.exploit, "exploit sampler");
  c.exploit_coordinates = a.exploit_coords;
  c.seed = a.seed;
  return s;
}

std::size_t resolve_budget(const Args& a, std::size_t n) {
  return a.budget != 0 ? a.budget : a.budget_factor * n;
}

void add_spec_flags(CLI::App* cmd, Args& a) {
  cmd->add_option("--config", a.config, "key = value file; flags override it");
  cmd->add_option("--fn-external", a.fn_external,
                  "external objective: shell command or http:// endpoint");
  cmd->add_option("--budget", a.budget, "total evaluations T (default budget-factor * n)");
  cmd->add_option("--budget-factor", a.budget_factor, "T = factor * n when --budget is unset")
      ->capture_default_str();
  cmd->add_option("--train-size", a.train_size, "pool size r")->capture_default_str();
  cmd->add_option("--pos-size", a.pos_size, "positive samples m")->capture_default_str();
  cmd->add_option("--lambda", a.lambda, "exploitation rate")->capture_default_str();
  cmd->add_option("--replace", a.replace, "worst | random-negative")->capture_default_str();
  cmd->add_option("--exploit", a.exploit, "anchored | box")->capture_default_str();
  cmd->add_option("--exploit-coords", a.exploit_coords,
                  "coordinates redrawn by the anchored sampler (0 = by dimension)");
  cmd->add_option("--reps", a.reps, "repetitions")->capture_default_str();
  cmd->add_option("--seed", a.seed, "base seed")->capture_default_str();
  cmd->add_option("--out", a.out, "output directory")->capture_default_str();
  cmd->add_option("--workers", a.workers, "worker threads")->capture_default_str();
  cmd->add_flag("--ackley-shifted-cosine", a.ackley_shifted_cosine,
                "shift the cosine term of Ackley by 0.2 as well");
  cmd->add_option("--timeout", a.timeout, "seconds per external evaluation")
      ->capture_default_str();
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream os(dir / name);
  if (!os) throw std::runtime_error(fmt::format("cannot write {}", (dir / name).string()));
  return os;
}

bool report_failures(const std::vector<RunRecord>& records, std::ostream& err) {
  bool failed = false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].failure) {
      err << fmt::format("run {} stopped after {} evaluations: {}\n", i,
                         records[i].trajectory.size(), *records[i].failure);
      failed = true;
    }
  }
  return failed;
}

int cmd_run(const Args& a, std::ostream& out, std::ostream& err) {
  ExperimentSpec spec = base_spec(a);
  spec.algorithm = parse_or_throw(parse_algorithm(a.alg), a.alg, "algorithm");
  spec.n = single_size(a.n, "--n");
  spec.radius = single_real(a.radius, "--radius");
  spec.config.gamma = single_real(a.gamma, "--gamma");
  spec.config.rho = single_real(a.rho, "--rho");
  spec.config.budget = resolve_budget(a, spec.n);
  spec.validate();

  const std::vector<RunRecord> records = run_experiment(spec);
  const bool failed = report_failures(records, err);
  {
    auto os = open_output(a.out, "trajectory.csv");
    write_trajectory_csv(os, records);
  }
  auto os = open_output(a.out, "summary.csv");
  write_summary_csv(os, spec, records);
  const Summary s = summarize(final_values(records));
  out << fmt::format("{} on {} (n={}, T={}, reps={}): mean {} std {} min {} max {}\n",
                     to_string(spec.algorithm), spec.objective_name(), spec.n, spec.config.budget,
                     spec.reps, format_real(s.mean), format_real(s.stdev), format_real(s.min),
                     format_real(s.max));
  return failed ? exit_runtime : exit_success;
}

struct Cell {
  double gamma, rho;
  std::size_t n;
  double radius;
};

// A single ablation cell with rho == 0 is the SRACOS reference.
ExperimentSpec cell_spec(const Args& a, const Cell& c) {
  ExperimentSpec s = base_spec(a);
  s.algorithm = c.rho == 0.0 ? Algorithm::sracos : Algorithm::racecars;
  s.n = c.n;
  s.radius = c.radius;
  s.config.gamma = c.gamma;
  s.config.rho = c.rho;
  s.config.budget = resolve_budget(a, c.n);
  s.workers = 1;
  return s;
}

int cmd_ablate(const Args& a, std::ostream& out, std::ostream& err) {
  std::vector<Cell> cells;
  for (double g : parse_real_list(a.gamma)) {
    for (double rad : parse_real_list(a.radius)) {
      for (double rho : parse_real_list(a.rho)) {
        for (std::size_t n : parse_size_list(a.n)) cells.push_back({g, rho, n, rad});
      }
    }
  }
  for (const Cell& c : cells) cell_spec(a, c).validate();

  struct Job {
    std::size_t cell, rep;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t rep = 0; rep < a.reps; ++rep) jobs.push_back({c, rep});
  }
  // Each cell is a plain experiment, so rep k of every cell uses the seed
  // that `run` gives rep k.
  std::vector<RunRecord> records;
  for (const Cell& c : cells) {
    ExperimentSpec s = cell_spec(a, c);
    s.workers = a.workers;
    for (auto& r : run_experiment(s)) records.push_back(std::move(r));
  }
  const bool failed = report_failures(records, err);

  auto long_csv = open_output(a.out, "ablation.csv");
  long_csv << "gamma,rho,n,radius,alg,budget,rep,seed,final_best\n";
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Cell& c = cells[jobs[j].cell];
    const ExperimentSpec s = cell_spec(a, c);
    long_csv << format_real(c.gamma) << ',' << format_real(c.rho) << ',' << c.n << ','
             << format_real(c.radius) << ',' << to_string(s.algorithm) << ',' << s.config.budget
             << ',' << jobs[j].rep << ',' << derive_seed(a.seed, jobs[j].rep) << ','
             << format_real(records[j].final_best()) << '\n';
  }

  std::vector<Summary> summaries;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<double> v;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].cell == c) v.push_back(records[j].final_best());
    }
    summaries.push_back(summarize(v));
  }
  auto agg = open_output(a.out, "ablation_summary.csv");
  agg << "gamma,rho,n,radius,alg,budget,reps,mean,std,min,max\n";
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const ExperimentSpec s = cell_spec(a, cells[c]);
    const Summary& m = summaries[c];
    agg << format_real(cells[c].gamma) << ',' << format_real(cells[c].rho) << ',' << cells[c].n
        << ',' << format_real(cells[c].radius) << ',' << to_string(s.algorithm) << ','
        << s.config.budget << ',' << a.reps << ',' << format_real(m.mean) << ','
        << format_real(m.stdev) << ',' << format_real(m.min) << ',' << format_real(m.max) << '\n';
  }

  // Rows rho, columns n; one block per (gamma, radius).
  std::ostringstream table;
  const auto ns = parse_size_list(a.n);
  std::size_t c = 0;
  for (double g : parse_real_list(a.gamma)) {
    for (double rad : parse_real_list(a.radius)) {
      table << fmt::format("gamma={} radius={}\n{:>8}", format_real(g), format_real(rad), "rho\\n");
      for (std::size_t n : ns) table << fmt::format(" {:>12}", n);
      table << '\n';
      for (double rho : parse_real_list(a.rho)) {
        table << fmt::format("{:>8}", format_real(rho));
        for (std::size_t k = 0; k < ns.size(); ++k, ++c) {
          table << fmt::format(" {:>12}",
                               fmt::format("{:.1f}±{:.1f}", summaries[c].mean, summaries[c].stdev));
        }
        table << '\n';
      }
    }
  }
  auto txt = open_output(a.out, "ablation_table.txt");
  txt << table.str();
  out << table.str();
  return failed ? exit_runtime : exit_success;
}

int cmd_bench(const Args& a, std::ostream& out, std::ostream& err) {
  std::vector<Algorithm> algs;
  for (std::string_view item : CLI::detail::split(a.alg, ',')) {
    algs.push_back(parse_or_throw(parse_algorithm(item), std::string(item), "algorithm"));
  }
  std::vector<std::string> fns = CLI::detail::split(a.fn, ',');
  const std::size_t n = single_size(a.n, "--n");

  std::vector<ExperimentSpec> specs;
  for (const auto& fn : fns) {
    for (Algorithm alg : algs) {
      ExperimentSpec s = base_spec(a);
      s.algorithm = alg;
      s.function = fn;
      s.external.clear();
      s.n = n;
      s.radius = single_real(a.radius, "--radius");
      s.config.gamma = single_real(a.gamma, "--gamma");
      s.config.rho = single_real(a.rho, "--rho");
      s.config.budget = resolve_budget(a, n);
      s.workers = 1;
      s.validate();
      specs.push_back(s);
    }
  }
  const std::size_t reps = a.reps;
  const auto records = run_indexed<RunRecord>(specs.size() * reps, a.workers, [&](std::size_t j) {
    ExperimentSpec s = specs[j / reps];
    s.reps = 1;
    s.config.seed = s.run_seed(j % reps);
    return std::move(run_experiment(s).front());
  });
  const bool failed = report_failures(records, err);

  auto summary = open_output(a.out, "bench_summary.csv");
  auto traj = open_output(a.out, "bench_trajectory.csv");
  summary << "alg,fn,n,budget,reps,mean,std,min,max\n";
  traj << "alg,fn,eval_index,mean_best_so_far\n";
  std::map<std::string, std::map<Algorithm, std::vector<double>>> finals;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const ExperimentSpec& s = specs[i];
    std::vector<RunRecord> mine(records.begin() + static_cast<std::ptrdiff_t>(i * reps),
                                records.begin() + static_cast<std::ptrdiff_t>((i + 1) * reps));
    const Summary m = summarize(final_values(mine));
    finals[s.function][s.algorithm] = final_values(mine);
    summary << to_string(s.algorithm) << ',' << s.function << ',' << n << ',' << s.config.budget
            << ',' << reps << ',' << format_real(m.mean) << ',' << format_real(m.stdev) << ','
            << format_real(m.min) << ',' << format_real(m.max) << '\n';
    out << fmt::format("{:<10} {:<10} mean {:>12.6g} std {:>10.4g}\n", s.function,
                       to_string(s.algorithm), m.mean, m.stdev);
    std::size_t len = s.config.budget;
    for (const auto& r : mine) len = std::min(len, r.trajectory.size());
    for (std::size_t t = 0; t < len; ++t) {
      double sum = 0.0;
      for (const auto& r : mine) sum += r.trajectory[t].best_so_far;
      traj << to_string(s.algorithm) << ',' << s.function << ',' << t + 1 << ','
           << format_real(sum / static_cast<double>(reps)) << '\n';
    }
  }
  if (reps >= 2) {
    for (const auto& [fn, by_alg] : finals) {
      if (!by_alg.count(Algorithm::sracos) || !by_alg.count(Algorithm::racecars)) continue;
      const PairedTest t = paired_t_test(by_alg.at(Algorithm::sracos), by_alg.at(Algorithm::racecars));
      out << fmt::format("{}: racecars below sracos by {:.4g} on average, paired t = {:.3f}, "
                         "one-sided p = {:.3g}\n",
                         fn, t.mean_difference, t.t, t.p_value);
    }
  }
  return failed ? exit_runtime : exit_success;
}

int cmd_verify(const Args& a, std::ostream& out, bool write_file) {
  VerifyOptions o;
  o.seed = a.seed;
  o.harness_runs = a.harness_runs;
  o.bound_tuples = a.bound_tuples;
  o.classifier_splits = a.classifier_splits;
  const auto results = run_verify(o);
  write_verify_report(out, results);
  if (write_file) {
    auto os = open_output(a.out, "verify_report.txt");
    write_verify_report(os, results);
  }
  return all_passed(results) ? exit_success : exit_verify_failed;
}

// "key = value" lines become "--key=value" tokens.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError(fmt::format("cannot read config file '{}'", path));
  std::vector<std::string> tokens;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string trimmed = CLI::detail::trim_copy(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError(fmt::format("{}:{}: expected key = value", path, number));
    }
    std::string key = CLI::detail::trim_copy(trimmed.substr(0, eq));
    std::string value = CLI::detail::trim_copy(trimmed.substr(eq + 1));
    if (key.empty() || key == "config") {
      throw PreconditionError(fmt::format("{}:{}: invalid key '{}'", path, number, key));
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    tokens.push_back(fmt::format("--{}={}", key, value));
  }
  return tokens;
}

// Inserts the config file's tokens right after the subcommand name so that
// any later command-line flag wins.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      continue;
    }
    auto tokens = config_tokens(path);
    args.insert(args.begin() + 1, tokens.begin(), tokens.end());
    break;
  }
  return args;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Classification-based derivative-free optimization with region shrinking",
               "racecars"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* run = app.add_subcommand("run", "repeated runs of one algorithm on one objective");
  add_spec_flags(run, a);
  run->add_option("--alg", a.alg, "batch | sracos | racecars")->capture_default_str();
  run->add_option("--fn", a.fn, "ackley | levy | rastrigin | sphere")->capture_default_str();
  run->add_option("--n", a.n, "dimension")->capture_default_str();
  run->add_option("--radius", a.radius, "boundary is [-radius, radius]^n")->capture_default_str();
  run->add_option("--gamma", a.gamma, "region shrinking rate")->capture_default_str();
  run->add_option("--rho", a.rho, "region shrinking frequency")->capture_default_str();

  auto* ablate = app.add_subcommand("ablate", "grid over gamma, rho, n and radius; rho = 0 runs sracos");
  add_spec_flags(ablate, a);
  ablate->add_option("--fn", a.fn, "objective")->capture_default_str();
  ablate->add_option("--n", a.n, "dimensions: list a,b or range lo:hi:step")->capture_default_str();
  ablate->add_option("--radius", a.radius, "radii")->capture_default_str();
  ablate->add_option("--gamma", a.gamma, "shrinking rates")->capture_default_str();
  ablate->add_option("--rho", a.rho, "shrinking frequencies")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "algorithms compared on the synthetic functions");
  add_spec_flags(bench, a);
  bench->add_option("--alg", a.alg, "algorithms, comma separated");
  bench->add_option("--fn", a.fn, "functions, comma separated");
  bench->add_option("--n", a.n, "dimension")->capture_default_str();
  bench->add_option("--radius", a.radius, "boundary radius")->capture_default_str();
  bench->add_option("--gamma", a.gamma, "region shrinking rate")->capture_default_str();
  bench->add_option("--rho", a.rho, "region shrinking frequency")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "self-checks of the closed forms and invariants");
  verify->add_option("--config", a.config, "key = value file");
  verify->add_option("--seed", a.seed, "seed")->capture_default_str();
  verify->add_option("--out", a.out, "also write verify_report.txt here");
  verify->add_option("--harness-runs", a.harness_runs, "runs per harness case")->capture_default_str();
  verify->add_option("--bound-tuples", a.bound_tuples, "random bound inputs")->capture_default_str();
  verify->add_option("--classifier-splits", a.classifier_splits, "random training splits")
      ->capture_default_str();

  try {
    std::vector<std::string> args = expand_config(raw_args);
    if (!args.empty() && args.front() == "bench") {
      a.alg = "batch,sracos,racecars";
      a.fn = "ackley,levy,rastrigin,sphere";
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_success;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_success;
  } catch (const CLI::ParseError& e) {
    std::string help;
    for (auto* sub : app.get_subcommands()) help = sub->help();
    err << e.what() << '\n' << (help.empty() ? app.help() : help);
    return exit_usage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (*run) return cmd_run(a, out, err);
    if (*ablate) return cmd_ablate(a, out, err);
    if (*bench) return cmd_bench(a, out, err);
    return cmd_verify(a, out, verify->count("--out") > 0);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ObjectiveFailure& e) {
    err << "objective failure: " << e.what() << '\n';
    return exit_runtime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_runtime;
  }
}

}  // namespace racecars
