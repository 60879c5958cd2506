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

#include "rtbench/sbm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "rtbench/parallel.hpp"

namespace rtbench {

void SbmConfig::validate() const {
  if (n_steps < 1) throw std::invalid_argument("SBM needs at least one step");
  if (n_replicas < 1) throw std::invalid_argument("SBM needs at least one replica");
  if (!(dt_min > 0.0) || !(dt_max >= dt_min)) throw std::invalid_argument("SBM needs 0 < dt_min <= dt_max");
  if (!(a0 > 0.0)) throw std::invalid_argument("SBM needs a0 > 0");
  if (c0_override && !(*c0_override > 0.0)) throw std::invalid_argument("c0 must be positive");
  if (trace_every < 0) throw std::invalid_argument("trace_every must be non-negative");
}

double default_c0(const IsingInstance& inst, double a0) {
  const double n = inst.size();
  double sum_sq = 0.0;
  for (const auto& [key, v] : inst.couplings()) sum_sq += 2.0 * v * v;
  if (n < 2 || sum_sq == 0.0) throw std::domain_error("c0 undefined: no nonzero couplings");
  const double sigma = std::sqrt(sum_sq / (n * (n - 1.0)));
  return 0.7 * a0 / (sigma * std::sqrt(n));
}

SbmModel make_sbm_model(const IsingInstance& inst, double a0, std::optional<double> c0_override) {
  SbmModel m;
  m.J = inst.sparse_couplings();
  m.h = inst.field_vector();
  m.a0 = a0;
  m.c0 = c0_override ? *c0_override : default_c0(inst, a0);
  return m;
}

int ternary_f(double x, double t, double T) {
  const double threshold = 0.7 * t / T;
  if (std::abs(x) <= threshold) return 0;
  return x < 0.0 ? -1 : 1;
}

void sbm_step(SbmState& state, const SbmModel& model, const Eigen::VectorXd& dt, double progress) {
  auto& q = state.q;
  auto& p = state.p;
  q.noalias() += model.a0 * (p * dt.asDiagonal());

  const double threshold = 0.7 * progress;
  const Eigen::MatrixXd f = q.unaryExpr([threshold](double x) {
    return std::abs(x) <= threshold ? 0.0 : (x < 0.0 ? -1.0 : 1.0);
  });
  Eigen::MatrixXd force = model.J * f;
  force.colwise() += model.h;
  force = -(model.a0 - progress) * q - model.c0 * force;
  p.noalias() += force * dt.asDiagonal();

  for (Eigen::Index c = 0; c < q.cols(); ++c)
    for (Eigen::Index i = 0; i < q.rows(); ++i)
      if (std::abs(q(i, c)) > 1.0) {
        q(i, c) = q(i, c) < 0.0 ? -1.0 : 1.0;
        p(i, c) = 0.0;
      }
}

SpinState binarize(const Eigen::VectorXd& q) {
  SpinState s(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) s(i) = q(i) < 0.0 ? -1 : 1;
  return s;
}

SolverRun sbm_solve(const IsingInstance& inst, const SbmConfig& config) {
  Stopwatch total;
  config.validate();
  SolverRun run;
  const int n = inst.size();
  const int replicas = config.n_replicas;

  Stopwatch phase;
  const SbmModel model = make_sbm_model(inst, config.a0, config.c0_override);
  SbmState state{Eigen::MatrixXd(n, replicas), Eigen::MatrixXd(n, replicas)};
  Eigen::VectorXd dt(replicas);
  const double log_lo = std::log(config.dt_min), log_hi = std::log(config.dt_max);
  for (int r = 0; r < replicas; ++r) {
    std::mt19937_64 rng(stream_seed(config.seed, static_cast<std::uint64_t>(r)));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> log_dt(log_lo, log_hi);
    dt(r) = config.dt_min < config.dt_max ? std::exp(log_dt(rng)) : config.dt_min;
    for (int i = 0; i < n; ++i) state.q(i, r) = unit(rng);
    for (int i = 0; i < n; ++i) state.p(i, r) = unit(rng);
  }
  run.timing.setup = phase.seconds();

  // Replica blocks evolve independently; J * f(q) is computed column by column.
  phase.restart();
  const int checkpoints = config.trace_every > 0 ? config.n_steps / config.trace_every : 0;
  const int blocks = std::clamp(config.threads, 1, replicas);
  std::vector<std::vector<TracePoint>> block_trace(blocks, std::vector<TracePoint>(checkpoints));
  parallel_for(static_cast<std::size_t>(blocks), blocks, [&](std::size_t bb, std::size_t be) {
    for (std::size_t b = bb; b < be; ++b) {
      const Eigen::Index c0 = replicas * b / blocks;
      const Eigen::Index width = replicas * (b + 1) / blocks - c0;
      SbmState local{state.q.middleCols(c0, width), state.p.middleCols(c0, width)};
      const Eigen::VectorXd local_dt = dt.segment(c0, width);
      int cp = 0;
      for (int step = 1; step <= config.n_steps; ++step) {
        sbm_step(local, model, local_dt, static_cast<double>(step) / config.n_steps);
        if (checkpoints > 0 && step % config.trace_every == 0 && cp < checkpoints) {
          double best = std::numeric_limits<double>::infinity();
          for (Eigen::Index c = 0; c < width; ++c)
            best = std::min(best, ising_energy(inst, binarize(local.q.col(c))));
          block_trace[b][cp++] = {phase.seconds(), best};
        }
      }
      state.q.middleCols(c0, width) = local.q;
      state.p.middleCols(c0, width) = local.p;
    }
  });
  run.timing.compute = phase.seconds();

  phase.restart();
  for (int cp = 0; cp < checkpoints; ++cp) {
    TracePoint tp{0.0, std::numeric_limits<double>::infinity()};
    for (const auto& bt : block_trace) {
      tp.time = std::max(tp.time, bt[cp].time);
      tp.energy = std::min(tp.energy, bt[cp].energy);
    }
    run.trace.push_back(tp);
  }
  run.energies.resize(replicas);
  int best = 0;
  for (int r = 0; r < replicas; ++r) {
    SpinState s = binarize(state.q.col(r));
    run.energies[r] = ising_energy(inst, s);
    if (config.keep_states) run.final_states.push_back(std::move(s));
    if (run.energies[r] < run.energies[best]) best = r;
  }
  run.best_state = binarize(state.q.col(best));
  run.best_energy = run.energies[best];
  if (checkpoints == 0 || config.n_steps % config.trace_every != 0)
    run.trace.push_back({run.timing.compute, run.best_energy});
  run.hyperparameters = {{"solver", "sbm"},          {"a0", model.a0},
                         {"c0", model.c0},           {"n_steps", config.n_steps},
                         {"dt_min", config.dt_min},  {"dt_max", config.dt_max},
                         {"n_replicas", replicas},   {"seed", config.seed},
                         {"threads", config.threads}};
  run.timing.collect = phase.seconds();
  run.timing.total = total.seconds();
  return run;
}

}  // namespace rtbench
