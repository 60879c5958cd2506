/**
 * Copyright 2026 The rtbench Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// rtbench command line: instance generation, single solves, Simon trials and
// benchmark sweeps. Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rtbench/bench.hpp"
#include "rtbench/instance_gen.hpp"
#include "rtbench/instance_io.hpp"
#include "rtbench/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rtbench;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
void as_usage(F&& validate) {
  try {
    validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void emit(const json& j, const std::string& path) {
  const std::string text = j.dump(1) + "\n";
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

json run_to_json(const std::string& instance, const SolverSpec& spec, const RunRecord& r) {
  json trace = json::array();
  for (const auto& tp : r.trace) trace.push_back({tp.time, tp.energy});
  return {{"instance", instance},    {"solver", spec.label()},      {"config", solver_spec_to_json(spec)},
          {"seed", r.seed},          {"best_energy", r.best_energy}, {"energies", r.energies},
          {"trace", std::move(trace)}, {"timing", to_json(r.timing)}, {"extra", r.extra}};
}

struct GenOptions {
  std::string type = "cauchy4";
  int size = kHeronQubits;
  int count = 1;
  std::uint64_t seed = 0;
  std::string out;
  double alpha = 1.0;
  double x_min = 1.0;
};

void cmd_gen(const GenOptions& o) {
  json manifest = {{"type", o.type}, {"size", o.size}, {"count", o.count}, {"seed", o.seed}, {"instances", json::array()}};
  for (int k = 0; k < o.count; ++k) {
    GeneratorConfig config;
    as_usage([&] {
      config = instance_type_config(o.type, o.size, generated_instance_seed(o.seed, o.size, k));
      if (config.distribution.kind == CouplingDistribution::Kind::SymmetrizedPareto)
        config.distribution = CouplingDistribution::pareto(o.alpha, o.x_min);
      config.validate();
    });
    const HuboInstance inst = generate_hubo(config);
    const std::string id = generated_instance_id(o.type, o.size, k);
    save_instance(fs::path(o.out) / (id + ".json"), inst);
    manifest["instances"].push_back({{"id", id}, {"file", id + ".json"}, {"hash", instance_hash(inst)}, {"config", inst.metadata}});
  }
  write_text_file(fs::path(o.out) / "manifest.json", manifest.dump(1) + "\n");
  std::cout << "wrote " << o.count << " instance(s) to " << o.out << "\n";
}

struct SolveOptions {
  std::string instance;
  std::string json_out;
  std::uint64_t seed = 0;
  int threads = 1;
};

void cmd_solve(const SolveOptions& o, SolverSpec spec) {
  as_usage([&] {
    if (spec.kind == SolverKind::Sbm) spec.sbm.validate();
    else spec.sa.validate();
  });
  if (!fs::exists(o.instance)) throw UsageError("instance file not found: " + o.instance);
  const RunRecord r = run_solver_on_file(o.instance, spec, o.seed);
  emit(run_to_json(o.instance, spec, r), o.json_out);
  if (!o.json_out.empty() && o.json_out != "-")
    std::cout << spec.label() << " best_energy=" << r.best_energy << " total=" << r.timing.total << "s\n";
}

struct SimonOptions {
  int n = 0;
  int w = 0;
  std::string mode = "restricted";
  std::uint64_t seed = 0;
  int trials = 1;
  int threads = 1;
  std::string json_out;
};

void cmd_simon(const SimonOptions& o) {
  simon::Mode mode{};
  as_usage([&] { mode = simon::mode_from_string(o.mode); });
  json trials = json::array();
  int correct = 0;
  for (int t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = stream_seed(o.seed, static_cast<std::uint64_t>(t));
    simon::TrialResult r;
    as_usage([&] { r = simon::run_trial(o.n, o.w, mode, seed, o.threads); });
    correct += r.correct;
    trials.push_back({{"seed", seed},
                      {"period", r.period.to_string()},
                      {"found", r.found.to_string()},
                      {"queries", r.queries},
                      {"correct", r.correct},
                      {"timing", to_json(r.timing)}});
  }
  emit({{"n", o.n}, {"w", o.w}, {"mode", o.mode}, {"correct", correct}, {"trials", std::move(trials)}}, o.json_out);
  if (!o.json_out.empty() && o.json_out != "-")
    std::cout << "simon n=" << o.n << " w=" << o.w << ": " << correct << "/" << o.trials << " periods recovered\n";
}

void cmd_bench_run(const std::string& config_path) {
  ExperimentConfig config;
  as_usage([&] {
    if (!fs::exists(config_path)) throw std::invalid_argument("config file not found: " + config_path);
    config = load_experiment_config(config_path);
    config.validate();
  });
  const auto records = run_experiment(config);
  int failed = 0;
  for (const auto& r : records)
    for (const auto& run : r.runs) failed += !run.ok;
  std::cout << "wrote " << records.size() << " record(s) to " << config.output_dir.string();
  if (failed) std::cout << " (" << failed << " failed run(s))";
  std::cout << "\n";
}

struct SummarizeOptions {
  std::string dir;
  std::string metric = "tte";
  double parameter = -1.0;
  std::string variant = "total";
  std::string json_out;
  std::string csv_out;
};

void cmd_bench_summarize(const SummarizeOptions& o) {
  MetricSpec metric;
  TimingVariant variant{};
  as_usage([&] {
    const double def = o.metric == "tte" ? 0.01 : o.metric == "runtime" ? 0.0 : 0.99;
    metric = MetricSpec::parse(o.metric, o.parameter >= 0.0 ? o.parameter : def);
    variant = timing_variant_from_string(o.variant);
    if (!fs::is_directory(o.dir)) throw std::invalid_argument("not a directory: " + o.dir);
  });
  const auto records = load_records(o.dir);
  if (records.empty()) throw std::runtime_error("no records in " + o.dir);
  const MetricTable table = summarize(records, metric, variant);
  if (!o.json_out.empty()) emit(to_json(table), o.json_out);
  if (!o.csv_out.empty()) write_text_file(o.csv_out, to_csv(table));
  if (o.json_out != "-") std::cout << to_csv(table);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rtbench: runtime benchmarking of classical Ising, HUBO and Simon solvers"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate benchmark HUBO instances");
  gen_cmd->add_option("--type", gen.type, "cauchy4 or pareto6")->check(CLI::IsMember({"cauchy4", "pareto6"}));
  gen_cmd->add_option("--size", gen.size, "number of qubits (12..156)")->required();
  gen_cmd->add_option("--count", gen.count, "instances to generate")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "master seed");
  gen_cmd->add_option("--out", gen.out, "output directory")->required();
  gen_cmd->add_option("--alpha", gen.alpha, "Pareto shape (pareto6)");
  gen_cmd->add_option("--xmin", gen.x_min, "Pareto scale (pareto6)");

  auto* solve_cmd = app.add_subcommand("solve", "run one solver on one instance");
  solve_cmd->require_subcommand(1);
  SolveOptions solve;
  SolverSpec sbm_spec;
  sbm_spec.kind = SolverKind::Sbm;
  auto* sbm_cmd = solve_cmd->add_subcommand("sbm", "simulated bifurcation");
  sbm_cmd->add_option("--instance", solve.instance)->required();
  sbm_cmd->add_option("--replicas", sbm_spec.sbm.n_replicas);
  sbm_cmd->add_option("--steps", sbm_spec.sbm.n_steps);
  sbm_cmd->add_option("--dt-min", sbm_spec.sbm.dt_min);
  sbm_cmd->add_option("--dt-max", sbm_spec.sbm.dt_max);
  sbm_cmd->add_option("--trace-every", sbm_spec.sbm.trace_every);
  sbm_cmd->add_option("--threads", sbm_spec.sbm.threads);
  sbm_cmd->add_option("--seed", solve.seed);
  sbm_cmd->add_option("--json", solve.json_out, "output file ('-' for stdout)");

  SolverSpec sa_spec;
  std::string sa_mode = "qubo";
  auto* sa_cmd = solve_cmd->add_subcommand("sa", "simulated annealing");
  sa_cmd->add_option("--instance", solve.instance)->required();
  sa_cmd->add_option("--mode", sa_mode)->check(CLI::IsMember({"qubo", "hubo"}));
  sa_cmd->add_option("--trajectories", sa_spec.sa.n_trajectories);
  sa_cmd->add_option("--steps", sa_spec.sa.n_steps);
  sa_cmd->add_option("--passes", sa_spec.sa.n_passes);
  sa_cmd->add_option("--t0", sa_spec.sa.t0);
  sa_cmd->add_option("--t1", sa_spec.sa.t1);
  sa_cmd->add_option("--threads", sa_spec.sa.threads);
  sa_cmd->add_option("--seed", solve.seed);
  sa_cmd->add_option("--json", solve.json_out, "output file ('-' for stdout)");

  SimonOptions simon_opts;
  auto* simon_cmd = app.add_subcommand("simon", "solve random Simon instances");
  simon_cmd->add_option("--n", simon_opts.n, "bits")->required();
  simon_cmd->add_option("--w", simon_opts.w, "maximum period weight (restricted mode)");
  simon_cmd->add_option("--mode", simon_opts.mode)->check(CLI::IsMember({"general", "restricted"}));
  simon_cmd->add_option("--seed", simon_opts.seed);
  simon_cmd->add_option("--trials", simon_opts.trials)->check(CLI::PositiveNumber);
  simon_cmd->add_option("--threads", simon_opts.threads);
  simon_cmd->add_option("--json", simon_opts.json_out, "output file ('-' for stdout)");

  auto* bench_cmd = app.add_subcommand("bench", "benchmark sweeps");
  bench_cmd->require_subcommand(1);
  std::string config_path;
  auto* run_cmd = bench_cmd->add_subcommand("run", "run a sweep described by a JSON config");
  run_cmd->add_option("config", config_path)->required();
  SummarizeOptions sum;
  auto* sum_cmd = bench_cmd->add_subcommand("summarize", "metric table from a sweep directory");
  sum_cmd->add_option("dir", sum.dir)->required();
  sum_cmd->add_option("--metric", sum.metric)->check(CLI::IsMember({"tte", "ttr", "success_fraction", "runtime"}));
  sum_cmd->add_option("--epsilon,--ratio,--param", sum.parameter,
                      "epsilon for tte (default 0.01), target ratio for ttr/success_fraction (default 0.99)");
  sum_cmd->add_option("--variant", sum.variant)->check(CLI::IsMember({"compute", "total", "total+tuning"}));
  sum_cmd->add_option("--json", sum.json_out, "write the table as JSON ('-' for stdout)");
  sum_cmd->add_option("--csv", sum.csv_out, "write the table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    if (*gen_cmd) {
      cmd_gen(gen);
    } else if (*sbm_cmd) {
      sbm_spec.sbm.seed = solve.seed;
      cmd_solve(solve, sbm_spec);
    } else if (*sa_cmd) {
      sa_spec.kind = sa_mode == "hubo" ? SolverKind::SaHubo : SolverKind::SaQubo;
      cmd_solve(solve, sa_spec);
    } else if (*simon_cmd) {
      cmd_simon(simon_opts);
    } else if (*run_cmd) {
      cmd_bench_run(config_path);
    } else if (*sum_cmd) {
      cmd_bench_summarize(sum);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
