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

#include "rtbench/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "rtbench/instance_gen.hpp"
#include "rtbench/instance_io.hpp"
#include "rtbench/parallel.hpp"

namespace rtbench {

namespace fs = std::filesystem;
using nlohmann::json;

// Solver specs --------------------------------------------------------------------

std::string to_string(SolverKind k) {
  switch (k) {
    case SolverKind::Sbm: return "sbm";
    case SolverKind::SaQubo: return "sa-qubo";
    case SolverKind::SaHubo: return "sa-hubo";
    case SolverKind::Simon: return "simon";
  }
  return "?";
}

SolverKind solver_kind_from_string(const std::string& s) {
  if (s == "sbm") return SolverKind::Sbm;
  if (s == "sa-qubo") return SolverKind::SaQubo;
  if (s == "sa-hubo") return SolverKind::SaHubo;
  if (s == "simon") return SolverKind::Simon;
  throw std::invalid_argument("unknown solver '" + s + "' (expected sbm, sa-qubo, sa-hubo or simon)");
}

std::string SolverSpec::label() const {
  if (kind == SolverKind::Simon) return "simon-" + simon::to_string(simon_mode);
  return to_string(kind);
}

void apply_overrides(SolverSpec& spec, const json& overrides) {
  for (const auto& [key, value] : overrides.items()) {
    if (key == "kind") {
      spec.kind = solver_kind_from_string(value.get<std::string>());
    } else if (spec.kind == SolverKind::Sbm) {
      auto& c = spec.sbm;
      if (key == "a0") c.a0 = value.get<double>();
      else if (key == "c0") c.c0_override = value.get<double>();
      else if (key == "n_steps") c.n_steps = value.get<int>();
      else if (key == "dt_min") c.dt_min = value.get<double>();
      else if (key == "dt_max") c.dt_max = value.get<double>();
      else if (key == "n_replicas") c.n_replicas = value.get<int>();
      else if (key == "threads") c.threads = value.get<int>();
      else if (key == "trace_every") c.trace_every = value.get<int>();
      else throw std::invalid_argument("unknown SBM parameter '" + key + "'");
    } else if (spec.kind == SolverKind::Simon) {
      if (key == "w") spec.simon_w = value.get<int>();
      else if (key == "mode") spec.simon_mode = simon::mode_from_string(value.get<std::string>());
      else throw std::invalid_argument("unknown Simon parameter '" + key + "'");
    } else {
      auto& c = spec.sa;
      if (key == "n_trajectories") c.n_trajectories = value.get<int>();
      else if (key == "n_steps") c.n_steps = value.get<int>();
      else if (key == "n_passes") c.n_passes = value.get<int>();
      else if (key == "t0") c.t0 = value.get<double>();
      else if (key == "t1") c.t1 = value.get<double>();
      else if (key == "threads") c.threads = value.get<int>();
      else throw std::invalid_argument("unknown SA parameter '" + key + "'");
    }
  }
}

json solver_spec_to_json(const SolverSpec& spec) {
  json j = {{"kind", to_string(spec.kind)}};
  switch (spec.kind) {
    case SolverKind::Sbm: {
      const auto& c = spec.sbm;
      j.update({{"a0", c.a0}, {"n_steps", c.n_steps}, {"dt_min", c.dt_min}, {"dt_max", c.dt_max},
                {"n_replicas", c.n_replicas}, {"threads", c.threads}, {"trace_every", c.trace_every}});
      if (c.c0_override) j["c0"] = *c.c0_override;
      break;
    }
    case SolverKind::SaQubo:
    case SolverKind::SaHubo: {
      const auto& c = spec.sa;
      j.update({{"n_trajectories", c.n_trajectories}, {"n_steps", c.n_steps}, {"n_passes", c.n_passes},
                {"t0", c.t0}, {"t1", c.t1}, {"threads", c.threads}});
      break;
    }
    case SolverKind::Simon:
      j.update({{"w", spec.simon_w}, {"mode", simon::to_string(spec.simon_mode)}});
      break;
  }
  return j;
}

// Config --------------------------------------------------------------------------

void ExperimentConfig::validate() const {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  if (solver.kind == SolverKind::Simon) {
    if (simon_sizes.empty()) throw std::invalid_argument("Simon sweeps need simon.sizes");
  } else {
    if (instances.empty() && !generator) throw std::invalid_argument("sweep has no instances");
    for (const auto& p : instances)
      if (!fs::exists(p)) throw std::invalid_argument("instance file not found: " + p.string());
    if (solver.kind == SolverKind::Sbm) solver.sbm.validate();
    else solver.sa.validate();
  }
  if (tuning && tuning->runs_per_point < 1) throw std::invalid_argument("tuning.runs_per_point must be >= 1");
}

ExperimentConfig experiment_config_from_json(const json& j, const fs::path& base_dir) {
  ExperimentConfig c;
  try {
    auto resolve = [&](const fs::path& p) { return p.is_absolute() || base_dir.empty() ? p : base_dir / p; };
    if (j.contains("instances"))
      for (const auto& p : j.at("instances")) c.instances.push_back(resolve(p.get<std::string>()));
    if (j.contains("generator")) {
      const auto& g = j.at("generator");
      GeneratorSweep sweep;
      sweep.type = g.at("type").get<std::string>();
      sweep.sizes = g.at("sizes").get<std::vector<int>>();
      sweep.count = g.value("count", 1);
      sweep.seed = g.value("seed", std::uint64_t{0});
      c.generator = sweep;
    }
    const json solver = j.at("solver");
    c.solver.kind = solver_kind_from_string(solver.at("kind").get<std::string>());
    json params = solver;
    params.erase("kind");
    apply_overrides(c.solver, params);
    if (j.contains("simon")) {
      const auto& s = j.at("simon");
      c.simon_sizes = s.at("sizes").get<std::vector<int>>();
      c.solver.simon_w = s.value("w", 0);
      c.solver.simon_mode = simon::mode_from_string(s.value("mode", std::string("restricted")));
    }
    c.repetitions = j.value("repetitions", 1);
    c.timing_variant = timing_variant_from_string(j.value("timing_variant", std::string("total")));
    c.seed = j.value("seed", std::uint64_t{0});
    c.output_dir = resolve(j.value("output_dir", std::string("sweep")));
    c.workers = j.value("workers", 1);
    c.reference_cap = j.value("reference_cap", 20);
    if (j.contains("tuning")) {
      TuningSpec t;
      for (const auto& g : j.at("tuning").at("grid")) t.grid.push_back(g);
      t.runs_per_point = j.at("tuning").value("runs_per_point", 1);
      c.tuning = t;
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  return experiment_config_from_json(j, path.parent_path());
}

std::uint64_t generated_instance_seed(std::uint64_t sweep_seed, int size, int k) {
  return stream_seed(sweep_seed, static_cast<std::uint64_t>(size) * 1000003ULL + static_cast<std::uint64_t>(k));
}

std::string generated_instance_id(const std::string& type, int size, int k) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s_N%d_%03d", type.c_str(), size, k);
  return buf;
}

// Records -------------------------------------------------------------------------

json to_json(const ExperimentRecord& r) {
  json runs = json::array();
  for (const auto& run : r.runs) {
    json trace = json::array();
    for (const auto& tp : run.trace) trace.push_back({tp.time, tp.energy});
    runs.push_back({{"seed", run.seed},
                    {"ok", run.ok},
                    {"error", run.error},
                    {"best_energy", run.best_energy},
                    {"energies", run.energies},
                    {"trace", std::move(trace)},
                    {"timing", to_json(run.timing)},
                    {"extra", run.extra}});
  }
  return {{"kind", "experiment_record"},
          {"schema_version", r.schema_version},
          {"instance", {{"id", r.instance_id}, {"hash", r.instance_hash}, {"n", r.n}, {"metadata", r.instance_metadata}}},
          {"solver", r.solver},
          {"solver_config", r.solver_config},
          {"reference", {{"energy", r.reference_energy ? json(*r.reference_energy) : json()},
                         {"kind", r.reference_kind}}},
          {"tuning_seconds", r.tuning_seconds},
          {"runs", std::move(runs)},
          {"environment", r.environment}};
}

ExperimentRecord record_from_json(const json& j) {
  try {
    if (j.value("kind", std::string()) != "experiment_record") throw std::invalid_argument("not an experiment record");
    ExperimentRecord r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kRecordSchemaVersion)
      throw std::invalid_argument("unsupported record schema version " + std::to_string(r.schema_version));
    const auto& inst = j.at("instance");
    r.instance_id = inst.at("id").get<std::string>();
    r.instance_hash = inst.at("hash").get<std::string>();
    r.n = inst.at("n").get<int>();
    r.instance_metadata = inst.value("metadata", json::object());
    r.solver = j.at("solver").get<std::string>();
    r.solver_config = j.at("solver_config");
    const auto& ref = j.at("reference");
    if (!ref.at("energy").is_null()) r.reference_energy = ref.at("energy").get<double>();
    r.reference_kind = ref.at("kind").get<std::string>();
    r.tuning_seconds = j.value("tuning_seconds", 0.0);
    for (const auto& rj : j.at("runs")) {
      RunRecord run;
      run.seed = rj.at("seed").get<std::uint64_t>();
      run.ok = rj.at("ok").get<bool>();
      run.error = rj.value("error", std::string());
      run.best_energy = rj.at("best_energy").get<double>();
      run.energies = rj.at("energies").get<std::vector<double>>();
      for (const auto& tp : rj.at("trace")) run.trace.push_back({tp.at(0).get<double>(), tp.at(1).get<double>()});
      run.timing = timing_from_json(rj.at("timing"));
      run.extra = rj.value("extra", json::object());
      r.runs.push_back(std::move(run));
    }
    r.environment = j.value("environment", json::object());
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment record: ") + e.what());
  }
}

std::string serialize_record(const ExperimentRecord& r) { return to_json(r).dump(1) + "\n"; }

ExperimentRecord parse_record(const std::string& text) {
  try {
    return record_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("record is not valid JSON: ") + e.what());
  }
}

std::vector<ExperimentRecord> load_records(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json" && entry.path().filename() != "sweep.json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<ExperimentRecord> out;
  for (const auto& f : files) out.push_back(parse_record(read_text_file(f)));
  return out;
}

json environment_fingerprint(int solver_threads, int workers) {
  std::string cpu = "unknown";
  std::ifstream info("/proc/cpuinfo");
  for (std::string line; std::getline(info, line);)
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) cpu = line.substr(line.find_first_not_of(' ', colon + 1));
      break;
    }
  return {{"cpu", cpu},
          {"hardware_threads", std::thread::hardware_concurrency()},
          {"solver_threads", solver_threads},
          {"workers", workers},
          {"compiler", __VERSION__}};
}

// Sweep execution ---------------------------------------------------------------

namespace {

int solver_threads(const SolverSpec& s) {
  switch (s.kind) {
    case SolverKind::Sbm: return s.sbm.threads;
    case SolverKind::SaQubo:
    case SolverKind::SaHubo: return s.sa.threads;
    case SolverKind::Simon: return 1;
  }
  return 1;
}

}  // namespace

RunRecord run_solver_on_file(const fs::path& path, const SolverSpec& spec, std::uint64_t seed) {
  Stopwatch total;
  RunRecord rec;
  rec.seed = seed;
  Stopwatch phase;
  const HuboInstance inst = load_instance(path);
  std::optional<Quadratization> reduced;
  IsingInstance ising;
  if (spec.kind != SolverKind::SaHubo) {
    if (inst.is_quadratic())
      ising = inst.to_ising();
    else
      reduced = reduce_hubo_to_qubo(inst);
  }
  const double load_time = phase.seconds();

  SolverRun run;
  switch (spec.kind) {
    case SolverKind::Sbm: {
      SbmConfig c = spec.sbm;
      c.seed = seed;
      c.keep_states = reduced.has_value();
      run = sbm_solve(reduced ? reduced->ising : ising, c);
      break;
    }
    case SolverKind::SaQubo: {
      SaConfig c = spec.sa;
      c.seed = seed;
      c.keep_states = reduced.has_value();
      run = sa_solve_qubo(reduced ? reduced->ising : ising, c);
      break;
    }
    case SolverKind::SaHubo: {
      SaConfig c = spec.sa;
      c.seed = seed;
      run = sa_solve_hubo(inst, c);
      break;
    }
    case SolverKind::Simon: throw std::logic_error("Simon runs do not take instance files");
  }

  phase.restart();
  if (reduced) {
    // Report energies of the original cubic problem on the original spins.
    rec.energies.reserve(run.final_states.size());
    for (const auto& s : run.final_states) rec.energies.push_back(hubo_energy(inst, s.head(inst.size())));
    rec.best_energy = *std::min_element(rec.energies.begin(), rec.energies.end());
    for (auto tp : run.trace) rec.trace.push_back({tp.time, tp.energy + reduced->offset});
    rec.extra["reduced_n"] = reduced->ising.size();
    rec.extra["reduction_offset"] = reduced->offset;
  } else {
    rec.energies = run.energies;
    rec.best_energy = run.best_energy;
    rec.trace = run.trace;
  }
  rec.extra["hyperparameters"] = run.hyperparameters;
  std::vector<int> best_state;
  if (reduced) {
    const auto it = std::min_element(rec.energies.begin(), rec.energies.end());
    const SpinState& s = run.final_states[it - rec.energies.begin()];
    best_state.assign(s.data(), s.data() + inst.size());
  } else {
    best_state.assign(run.best_state.data(), run.best_state.data() + run.best_state.size());
  }
  rec.extra["best_state"] = best_state;
  const double project_time = phase.seconds();

  rec.timing.setup = load_time + run.timing.setup;
  rec.timing.compute = run.timing.compute;
  rec.timing.collect = run.timing.collect + project_time;
  rec.timing.total = total.seconds();
  return rec;
}

namespace {

RunRecord execute_simon_run(int n, const SolverSpec& spec, std::uint64_t seed) {
  const auto trial = simon::run_trial(n, spec.simon_w, spec.simon_mode, seed);
  RunRecord rec;
  rec.seed = seed;
  rec.timing = trial.timing;
  rec.extra = {{"period", trial.period.to_string()},
               {"found", trial.found.to_string()},
               {"queries", trial.queries},
               {"correct", trial.correct}};
  return rec;
}

RunRecord guarded(const std::function<RunRecord()>& fn, std::uint64_t seed) {
  try {
    return fn();
  } catch (const std::exception& e) {
    RunRecord failed;
    failed.seed = seed;
    failed.ok = false;
    failed.error = e.what();
    return failed;
  }
}

struct Job {
  std::string id;
  fs::path path;  // empty for Simon jobs
  int simon_n = 0;
};

double mean_best(const std::vector<RunRecord>& runs) {
  double sum = 0.0;
  int ok = 0;
  for (const auto& r : runs)
    if (r.ok) {
      sum += r.best_energy;
      ++ok;
    }
  return ok ? sum / ok : kInfinity;
}

ExperimentRecord run_job(const Job& job, const ExperimentConfig& config) {
  ExperimentRecord rec;
  rec.instance_id = job.id;
  const std::uint64_t job_seed = config.seed ^ fnv1a64(job.id);
  SolverSpec spec = config.solver;
  rec.environment = environment_fingerprint(solver_threads(spec), config.workers);

  if (!job.path.empty()) {
    const HuboInstance inst = load_instance(job.path);
    rec.instance_hash = instance_hash(inst);
    rec.n = inst.size();
    rec.instance_metadata = inst.metadata;
  } else {
    rec.instance_hash = "-";
    rec.n = job.simon_n;
    rec.instance_metadata = {{"w", spec.simon_w}, {"mode", simon::to_string(spec.simon_mode)}};
  }

  json tuned = json::object();
  if (config.tuning && !config.tuning->grid.empty() && !job.path.empty()) {
    Stopwatch tuning_clock;
    double best_score = kInfinity;
    for (std::size_t g = 0; g < config.tuning->grid.size(); ++g) {
      SolverSpec candidate = config.solver;
      apply_overrides(candidate, config.tuning->grid[g]);
      std::vector<RunRecord> trial;
      for (int k = 0; k < config.tuning->runs_per_point; ++k) {
        const auto seed = stream_seed(job_seed ^ 0x74756e696e67ULL, g * 1000 + k);
        trial.push_back(guarded([&] { return run_solver_on_file(job.path, candidate, seed); }, seed));
      }
      const double score = mean_best(trial);
      if (score < best_score) {
        best_score = score;
        spec = candidate;
        tuned = config.tuning->grid[g];
      }
    }
    rec.tuning_seconds = tuning_clock.seconds();
  }
  rec.solver = spec.label();
  rec.solver_config = solver_spec_to_json(spec);
  if (!tuned.empty()) rec.solver_config["tuned_overrides"] = tuned;

  for (int rep = 0; rep < config.repetitions; ++rep) {
    const std::uint64_t seed = stream_seed(job_seed, static_cast<std::uint64_t>(rep));
    RunRecord run = job.path.empty()
                        ? guarded([&] { return execute_simon_run(job.simon_n, spec, seed); }, seed)
                        : guarded([&] { return run_solver_on_file(job.path, spec, seed); }, seed);
    run.timing.tuning = rec.tuning_seconds / config.repetitions;
    rec.runs.push_back(std::move(run));
  }

  rec.reference_kind = "none";
  if (!job.path.empty()) {
    if (rec.n <= config.reference_cap) {
      rec.reference_energy = brute_force_ground_state(load_instance(job.path), config.reference_cap).energy;
      rec.reference_kind = "brute_force";
    } else {
      for (const auto& r : rec.runs)
        if (r.ok && (!rec.reference_energy || r.best_energy < *rec.reference_energy))
          rec.reference_energy = r.best_energy;
      if (rec.reference_energy) rec.reference_kind = "best_found";
    }
  }
  return rec;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  fs::create_directories(config.output_dir);

  std::vector<Job> jobs;
  for (const auto& p : config.instances) jobs.push_back({p.stem().string(), p, 0});
  if (config.generator) {
    const auto& g = *config.generator;
    for (int size : g.sizes)
      for (int k = 0; k < g.count; ++k) {
        const auto id = generated_instance_id(g.type, size, k);
        const auto path = config.output_dir / "instances" / (id + ".json");
        save_instance(path, generate_hubo(instance_type_config(g.type, size, generated_instance_seed(g.seed, size, k))));
        jobs.push_back({id, path, 0});
      }
  }
  if (config.solver.kind == SolverKind::Simon) {
    jobs.clear();
    for (int n : config.simon_sizes) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "simon_n%02d_w%d", n, config.solver.simon_w);
      jobs.push_back({buf, {}, n});
    }
  }

  std::vector<ExperimentRecord> records(jobs.size());
  parallel_for(jobs.size(), config.workers, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      records[k] = run_job(jobs[k], config);
      write_text_file(config.output_dir / (jobs[k].id + ".json"), serialize_record(records[k]));
    }
  });

  json sweep = {{"solver", solver_spec_to_json(config.solver)},
                {"repetitions", config.repetitions},
                {"timing_variant", to_string(config.timing_variant)},
                {"seed", config.seed},
                {"records", json::array()}};
  for (const auto& j : jobs) sweep["records"].push_back(j.id + ".json");
  write_text_file(config.output_dir / "sweep.json", sweep.dump(1) + "\n");
  return records;
}

// Summaries -----------------------------------------------------------------------

MetricSpec MetricSpec::parse(const std::string& name, double parameter) {
  MetricSpec m;
  m.parameter = parameter;
  if (name == "tte") m.kind = Kind::Tte;
  else if (name == "ttr") m.kind = Kind::Ttr;
  else if (name == "success_fraction") m.kind = Kind::SuccessFraction;
  else if (name == "runtime") m.kind = Kind::Runtime;
  else throw std::invalid_argument("unknown metric '" + name + "'");
  return m;
}

std::string MetricSpec::name() const {
  switch (kind) {
    case Kind::Tte: return "tte";
    case Kind::Ttr: return "ttr";
    case Kind::SuccessFraction: return "success_fraction";
    case Kind::Runtime: return "runtime";
  }
  return "?";
}

namespace {

double mean_stderr(const std::vector<double>& values) {
  std::vector<double> finite;
  for (double v : values)
    if (std::isfinite(v)) finite.push_back(v);
  if (finite.size() < 2) return 0.0;
  const double mean = std::accumulate(finite.begin(), finite.end(), 0.0) / finite.size();
  double ss = 0.0;
  for (double v : finite) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (finite.size() - 1.0) / finite.size());
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MetricTable summarize(const std::vector<ExperimentRecord>& records, const MetricSpec& metric, TimingVariant variant) {
  MetricTable table;
  table.metric = metric.name();
  table.parameter = metric.parameter;
  table.variant = to_string(variant);

  std::map<std::pair<std::string, int>, std::vector<const ExperimentRecord*>> groups;
  for (const auto& r : records) groups[{r.solver, r.n}].push_back(&r);

  for (const auto& [key, members] : groups) {
    MetricRow row;
    row.solver = key.first;
    row.n = key.second;
    row.parameter = metric.parameter;
    row.variant = table.variant;
    std::vector<double> per_instance;

    for (const ExperimentRecord* rec : members) {
      std::vector<const RunRecord*> ok;
      for (const auto& run : rec->runs)
        if (run.ok) ok.push_back(&run);
      if (ok.empty()) {
        table.notes.push_back("skipped " + rec->instance_id + ": no successful runs");
        continue;
      }
      const bool needs_reference = metric.kind != MetricSpec::Kind::Runtime;
      if (needs_reference && !rec->reference_energy) {
        table.notes.push_back("skipped " + rec->instance_id + ": no reference energy");
        continue;
      }
      switch (metric.kind) {
        case MetricSpec::Kind::Tte: {
          std::vector<double> best;
          double t_sum = 0.0;
          for (const auto* run : ok) {
            best.push_back(run->best_energy);
            t_sum += charged_time(run->timing, variant);
          }
          const double t_f = t_sum / ok.size();
          if (!(t_f > 0.0)) {
            table.notes.push_back("skipped " + rec->instance_id + ": zero charged time");
            continue;
          }
          const auto est = estimate_success(best, *rec->reference_energy, metric.parameter);
          per_instance.push_back(time_to_epsilon(t_f, est.p_hat, true));
          break;
        }
        case MetricSpec::Kind::Ttr: {
          if (!(*rec->reference_energy < 0.0)) {
            table.notes.push_back("skipped " + rec->instance_id + ": non-negative reference energy");
            continue;
          }
          std::vector<double> times;
          for (const auto* run : ok) {
            if (run->trace.empty()) {
              times.push_back(kInfinity);
              continue;
            }
            const auto t = time_to_ratio(run->trace, *rec->reference_energy, metric.parameter);
            double offset = 0.0;
            if (variant != TimingVariant::Compute) offset += run->timing.setup;
            if (variant == TimingVariant::TotalPlusTuning) offset += run->timing.tuning;
            times.push_back(t ? *t + offset : kInfinity);
          }
          per_instance.push_back(median_tte(times));
          break;
        }
        case MetricSpec::Kind::SuccessFraction: {
          if (!(*rec->reference_energy < 0.0)) {
            table.notes.push_back("skipped " + rec->instance_id + ": non-negative reference energy");
            continue;
          }
          double best = kInfinity;
          for (const auto* run : ok) best = std::min(best, run->best_energy);
          per_instance.push_back(approximation_ratio(best, *rec->reference_energy));
          break;
        }
        case MetricSpec::Kind::Runtime: {
          std::vector<double> times;
          for (const auto* run : ok) times.push_back(charged_time(run->timing, variant));
          per_instance.push_back(median_tte(times));
          break;
        }
      }
    }
    if (per_instance.empty()) continue;
    row.instances = static_cast<int>(per_instance.size());
    if (metric.kind == MetricSpec::Kind::SuccessFraction) {
      row.value = success_fraction(per_instance, metric.parameter);
      row.stderr_ = std::sqrt(row.value * (1.0 - row.value) / row.instances);
    } else {
      row.censored = static_cast<int>(std::count_if(per_instance.begin(), per_instance.end(),
                                                    [](double v) { return !std::isfinite(v); }));
      row.value = median_tte(per_instance);
      row.stderr_ = mean_stderr(per_instance);
    }
    table.rows.push_back(row);
  }

  if (metric.kind != MetricSpec::Kind::SuccessFraction) {
    std::map<std::string, std::vector<std::pair<double, double>>> points;
    for (const auto& row : table.rows) {
      if (std::isfinite(row.value) && row.value > 0.0)
        points[row.solver].push_back({static_cast<double>(row.n), row.value});
      else
        table.notes.push_back("excluded from fit: " + row.solver + " N=" + std::to_string(row.n) +
                              " value=" + fmt(row.value));
    }
    for (const auto& [solver, pts] : points) {
      try {
        table.fits[solver] = fit_power_law(pts);
      } catch (const std::invalid_argument& e) {
        table.notes.push_back("no fit for " + solver + ": " + e.what());
      }
    }
  }
  return table;
}

json to_json(const MetricTable& t) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(fmt(v)); };
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"solver", r.solver},
                    {"N", r.n},
                    {"parameter", r.parameter},
                    {"value", num(r.value)},
                    {"stderr", num(r.stderr_)},
                    {"variant", r.variant},
                    {"instances", r.instances},
                    {"censored", r.censored}});
  json fits = json::object();
  for (const auto& [solver, f] : t.fits)
    fits[solver] = {{"alpha", f.alpha},   {"alpha_stderr", f.alpha_stderr}, {"prefactor", f.prefactor},
                    {"n_min", f.n_min},   {"n_max", f.n_max},               {"points", f.points}};
  return {{"metric", t.metric}, {"parameter", t.parameter}, {"variant", t.variant},
          {"rows", std::move(rows)}, {"fits", std::move(fits)}, {"notes", t.notes}};
}

std::string to_csv(const MetricTable& t) {
  std::string out = "solver,N,parameter,value,stderr,variant,instances,censored\n";
  for (const auto& r : t.rows)
    out += r.solver + "," + std::to_string(r.n) + "," + fmt(r.parameter) + "," + fmt(r.value) + "," +
           fmt(r.stderr_) + "," + r.variant + "," + std::to_string(r.instances) + "," + std::to_string(r.censored) +
           "\n";
  for (const auto& [solver, f] : t.fits)
    out += "# fit " + solver + " alpha=" + fmt(f.alpha) + " stderr=" + fmt(f.alpha_stderr) + " prefactor=" +
           fmt(f.prefactor) + " N=[" + fmt(f.n_min) + "," + fmt(f.n_max) + "]\n";
  for (const auto& note : t.notes) out += "# note " + note + "\n";
  return out;
}

}  // namespace rtbench
