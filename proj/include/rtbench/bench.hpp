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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rtbench/metrics.hpp"
#include "rtbench/sa.hpp"
#include "rtbench/sbm.hpp"
#include "rtbench/simon.hpp"
#include "rtbench/solver_run.hpp"

namespace rtbench {

inline constexpr int kRecordSchemaVersion = 1;

enum class SolverKind { Sbm, SaQubo, SaHubo, Simon };
std::string to_string(SolverKind k);
SolverKind solver_kind_from_string(const std::string& s);

struct SolverSpec {
  SolverKind kind = SolverKind::Sbm;
  SbmConfig sbm;
  SaConfig sa;
  int simon_w = 0;
  simon::Mode simon_mode = simon::Mode::Restricted;

  /// "sbm", "sa-qubo", "sa-hubo", "simon-general" or "simon-restricted".
  std::string label() const;
};

/// Applies JSON overrides ({"t0": 3, "n_steps": 200, ...}) to a solver spec.
void apply_overrides(SolverSpec& spec, const nlohmann::json& overrides);
nlohmann::json solver_spec_to_json(const SolverSpec& spec);

struct GeneratorSweep {
  std::string type;  // cauchy4 | pareto6
  std::vector<int> sizes;
  int count = 1;
  std::uint64_t seed = 0;
};

struct TuningSpec {
  std::vector<nlohmann::json> grid;  // each entry is a set of overrides
  int runs_per_point = 1;
};

struct ExperimentConfig {
  std::vector<std::filesystem::path> instances;
  std::optional<GeneratorSweep> generator;
  std::vector<int> simon_sizes;  // Simon sweeps: one record per size
  SolverSpec solver;
  int repetitions = 1;
  TimingVariant timing_variant = TimingVariant::Total;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "sweep";
  int workers = 1;
  std::optional<TuningSpec> tuning;
  /// Instances up to this size get an exhaustive reference energy.
  int reference_cap = 20;

  void validate() const;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Seed of the k-th generated instance of a given size.
std::uint64_t generated_instance_seed(std::uint64_t sweep_seed, int size, int k);
std::string generated_instance_id(const std::string& type, int size, int k);

struct RunRecord {
  std::uint64_t seed = 0;
  bool ok = true;
  std::string error;
  double best_energy = 0.0;
  std::vector<double> energies;
  std::vector<TracePoint> trace;
  TimingBreakdown timing;
  nlohmann::json extra = nlohmann::json::object();
};

/// Everything needed to recompute metrics for one instance without re-running.
struct ExperimentRecord {
  int schema_version = kRecordSchemaVersion;
  std::string instance_id;
  std::string instance_hash;
  int n = 0;
  nlohmann::json instance_metadata = nlohmann::json::object();
  std::string solver;  // SolverSpec::label()
  nlohmann::json solver_config = nlohmann::json::object();
  std::optional<double> reference_energy;
  std::string reference_kind;  // brute_force | best_found | none
  double tuning_seconds = 0.0;
  std::vector<RunRecord> runs;
  nlohmann::json environment = nlohmann::json::object();
};

nlohmann::json to_json(const ExperimentRecord& r);
ExperimentRecord record_from_json(const nlohmann::json& j);
std::string serialize_record(const ExperimentRecord& r);
ExperimentRecord parse_record(const std::string& text);

/// Reads every record file of a sweep directory, ordered by file name.
std::vector<ExperimentRecord> load_records(const std::filesystem::path& dir);

/// One timed solve of an instance file. setup covers loading and, for the
/// quadratic solvers on cubic input, the reduction; reported energies are
/// those of the original problem.
RunRecord run_solver_on_file(const std::filesystem::path& path, const SolverSpec& spec, std::uint64_t seed);

nlohmann::json environment_fingerprint(int solver_threads, int workers);

/// Runs the sweep and writes one record file per instance into output_dir.
/// Solver failures are stored in the affected run and do not stop the sweep.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config);

struct MetricSpec {
  enum class Kind { Tte, Ttr, SuccessFraction, Runtime };
  Kind kind = Kind::Tte;
  double parameter = 0.01;  // epsilon for tte, target ratio for ttr / success_fraction

  static MetricSpec parse(const std::string& name, double parameter);
  std::string name() const;
};

struct MetricRow {
  std::string solver;
  int n = 0;
  double parameter = 0.0;
  double value = 0.0;
  double stderr_ = 0.0;
  std::string variant;
  int instances = 0;
  int censored = 0;
};

struct MetricTable {
  std::string metric;
  double parameter = 0.0;
  std::string variant;
  std::vector<MetricRow> rows;
  std::map<std::string, FitResult> fits;  // per solver, over finite rows
  std::vector<std::string> notes;         // exclusions and skipped inputs
};

/// Groups records by (solver, N) and evaluates the metric per group. For tte
/// every run is one attempt whose success is judged on its best energy and
/// whose cost is the charged time of the chosen variant; per-instance values
/// are reduced with the lower median. stderr is the standard error of the
/// mean of the finite per-instance values (binomial for success_fraction).
MetricTable summarize(const std::vector<ExperimentRecord>& records, const MetricSpec& metric,
                      TimingVariant variant);

nlohmann::json to_json(const MetricTable& t);
std::string to_csv(const MetricTable& t);

}  // namespace rtbench
