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

#include "rtbench/sa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "rtbench/parallel.hpp"

namespace rtbench {

void SaConfig::validate() const {
  if (n_trajectories < 1 || n_steps < 1 || n_passes < 1)
    throw std::invalid_argument("SA counts must be at least 1");
  if (!(t1 > 0.0) || !(t0 >= t1)) throw std::invalid_argument("SA needs t0 >= t1 > 0");
}

std::vector<double> beta_schedule(double t0, double t1, int n_steps) {
  if (!(t1 > 0.0) || !(t0 >= t1)) throw std::invalid_argument("beta schedule needs t0 >= t1 > 0");
  if (n_steps < 1) throw std::invalid_argument("beta schedule needs n_steps >= 1");
  std::vector<double> beta(n_steps);
  const double b0 = 1.0 / t0, b1 = 1.0 / t1;
  if (n_steps == 1) return {b0};
  const double ratio = b1 / b0;
  for (int k = 0; k < n_steps; ++k) beta[k] = b0 * std::pow(ratio, static_cast<double>(k) / (n_steps - 1));
  beta.front() = b0;
  beta.back() = b1;
  return beta;
}

Eigen::RowVectorXd qubo_flip_costs(const Eigen::MatrixXd& J, const Eigen::VectorXd& h,
                                   const Eigen::RowVectorXd& s) {
  return (-2.0 * s.array() * ((s * J).array() + h.transpose().array())).matrix();
}

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct BlockResult {
  std::vector<TracePoint> trace;  // per temperature step
};

std::vector<TracePoint> merge_traces(const std::vector<BlockResult>& blocks) {
  std::vector<TracePoint> out;
  if (blocks.empty()) return out;
  out.assign(blocks.front().trace.size(), {0.0, std::numeric_limits<double>::infinity()});
  for (const auto& b : blocks)
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k].time = std::max(out[k].time, b.trace[k].time);
      out[k].energy = std::min(out[k].energy, b.trace[k].energy);
    }
  return out;
}

template <class Matrix, class Energy>
void collect_results(SolverRun& run, const Matrix& spins, bool keep_states, Energy&& energy) {
  const Eigen::Index m = spins.rows();
  run.energies.resize(m);
  Eigen::Index best = 0;
  for (Eigen::Index r = 0; r < m; ++r) {
    const SpinState s = spins.row(r).transpose().template cast<int>();
    run.energies[r] = energy(s);
    if (run.energies[r] < run.energies[best]) best = r;
    if (keep_states) run.final_states.push_back(s);
  }
  run.best_state = spins.row(best).transpose().template cast<int>();
  run.best_energy = run.energies[best];
}

nlohmann::json sa_hyperparameters(const SaConfig& c, const char* mode) {
  return {{"solver", "sa"},       {"mode", mode},
          {"n_trajectories", c.n_trajectories},
          {"n_steps", c.n_steps}, {"n_passes", c.n_passes},
          {"t0", c.t0},           {"t1", c.t1},
          {"seed", c.seed},       {"threads", c.threads}};
}

Eigen::MatrixXd random_spins(int m, int n, std::uint64_t seed, std::vector<std::mt19937_64>& rngs) {
  Eigen::MatrixXd s(m, n);
  rngs.clear();
  for (int r = 0; r < m; ++r) {
    rngs.emplace_back(stream_seed(seed, static_cast<std::uint64_t>(r)));
    std::bernoulli_distribution coin(0.5);
    for (int v = 0; v < n; ++v) s(r, v) = coin(rngs.back()) ? 1.0 : -1.0;
  }
  return s;
}

}  // namespace

SolverRun sa_solve_qubo(const IsingInstance& inst, const SaConfig& config, const QuboFlipObserver& observer) {
  Stopwatch total;
  config.validate();
  SolverRun run;
  const int n = inst.size();
  const int m = config.n_trajectories;

  Stopwatch phase;
  const Eigen::MatrixXd J = inst.dense_couplings();
  const Eigen::VectorXd h = inst.field_vector();
  const std::vector<double> beta = beta_schedule(config.t0, config.t1, config.n_steps);
  std::vector<std::mt19937_64> rngs;
  RowMatrix spins = random_spins(m, n, config.seed, rngs);
  RowMatrix delta = -2.0 * spins.cwiseProduct((spins * J).rowwise() + h.transpose());
  Eigen::VectorXd energy(m);
  for (int r = 0; r < m; ++r) {
    const Eigen::RowVectorXd s = spins.row(r);
    energy(r) = 0.5 * s.dot(s * J) + s.dot(h.transpose());
  }
  run.timing.setup = phase.seconds();

  phase.restart();
  // Trajectories only read their own rows, so the sweep order over r is free.
  const int blocks = observer ? 1 : std::clamp(config.threads, 1, m);
  std::vector<BlockResult> results(blocks);
  parallel_for(static_cast<std::size_t>(blocks), blocks, [&](std::size_t bb, std::size_t be) {
    for (std::size_t b = bb; b < be; ++b) {
      const int r0 = static_cast<int>(m * b / blocks), r1 = static_cast<int>(m * (b + 1) / blocks);
      results[b].trace.resize(config.n_steps);
      for (int step = 0; step < config.n_steps; ++step) {
        const double bt = beta[step];
        for (int r = r0; r < r1; ++r) {
          auto s = spins.row(r);
          auto d = delta.row(r);
          auto& rng = rngs[r];
          for (int pass = 0; pass < config.n_passes; ++pass)
            for (int v = 0; v < n; ++v) {
              const double dv = d(v);
              if (metropolis_accept(dv, bt, rng)) {
                energy(r) += dv;
                s(v) = -s(v);
                d(v) = -dv;
                d.noalias() -= (4.0 * s(v)) * J.col(v).transpose().cwiseProduct(s);
                if (observer) observer(r, v, s, d);
              }
            }
        }
        results[b].trace[step] = {phase.seconds(), energy.segment(r0, r1 - r0).minCoeff()};
      }
    }
  });
  run.timing.compute = phase.seconds();

  phase.restart();
  run.trace = merge_traces(results);
  collect_results(run, spins, config.keep_states, [&](const SpinState& s) { return ising_energy(inst, s); });
  run.hyperparameters = sa_hyperparameters(config, "qubo");
  run.timing.collect = phase.seconds();
  run.timing.total = total.seconds();
  return run;
}

// HUBO --------------------------------------------------------------------------

HuboSlices::HuboSlices(const HuboInstance& inst)
    : triples(inst.size()), pairs(inst.size()), h(Eigen::VectorXd::Zero(inst.size())) {
  for (const auto& [t, v] : inst.triple_terms()) {
    triples[t[0]].push_back({t[1], t[2], v});
    triples[t[1]].push_back({t[0], t[2], v});
    triples[t[2]].push_back({t[0], t[1], v});
  }
  for (const auto& [k, v] : inst.pair_terms()) {
    pairs[k[0]].push_back({k[1], v});
    pairs[k[1]].push_back({k[0], v});
  }
  for (const auto& [i, v] : inst.linear_terms()) h(i) = v;
}

Eigen::VectorXd hubo_flip_costs(const HuboSlices& slices, const Eigen::MatrixXd& spins, int v) {
  // (1/2) (s K_v s) over the symmetrized slice is the sum over distinct
  // unordered partner pairs.
  Eigen::VectorXd local = Eigen::VectorXd::Constant(spins.rows(), slices.h(v));
  for (const auto& t : slices.triples[v]) local += t.value * spins.col(t.j).cwiseProduct(spins.col(t.k));
  for (const auto& p : slices.pairs[v]) local += p.value * spins.col(p.w);
  return -2.0 * spins.col(v).cwiseProduct(local);
}

SolverRun sa_solve_hubo(const HuboInstance& inst, const SaConfig& config) {
  Stopwatch total;
  config.validate();
  SolverRun run;
  const int n = inst.size();
  const int m = config.n_trajectories;

  Stopwatch phase;
  const HuboSlices slices(inst);
  const std::vector<double> beta = beta_schedule(config.t0, config.t1, config.n_steps);
  std::vector<std::mt19937_64> rngs;
  Eigen::MatrixXd spins = random_spins(m, n, config.seed, rngs);
  Eigen::VectorXd energy(m);
  for (int r = 0; r < m; ++r) energy(r) = hubo_energy(inst, spins.row(r).transpose().template cast<int>());
  run.timing.setup = phase.seconds();

  phase.restart();
  const int blocks = std::clamp(config.threads, 1, m);
  std::vector<BlockResult> results(blocks);
  parallel_for(static_cast<std::size_t>(blocks), blocks, [&](std::size_t bb, std::size_t be) {
    for (std::size_t b = bb; b < be; ++b) {
      const int r0 = static_cast<int>(m * b / blocks), r1 = static_cast<int>(m * (b + 1) / blocks);
      Eigen::MatrixXd s = spins.middleRows(r0, r1 - r0);
      results[b].trace.resize(config.n_steps);
      for (int step = 0; step < config.n_steps; ++step) {
        const double bt = beta[step];
        for (int pass = 0; pass < config.n_passes; ++pass)
          for (int v = 0; v < n; ++v) {
            const Eigen::VectorXd d = hubo_flip_costs(slices, s, v);
            for (int r = 0; r < s.rows(); ++r) {
              if (metropolis_accept(d(r), bt, rngs[r0 + r])) {
                s(r, v) = -s(r, v);
                energy(r0 + r) += d(r);
              }
            }
          }
        results[b].trace[step] = {phase.seconds(), energy.segment(r0, r1 - r0).minCoeff()};
      }
      spins.middleRows(r0, r1 - r0) = s;
    }
  });
  run.timing.compute = phase.seconds();

  phase.restart();
  run.trace = merge_traces(results);
  collect_results(run, spins, config.keep_states, [&](const SpinState& s) { return hubo_energy(inst, s); });
  run.hyperparameters = sa_hyperparameters(config, "hubo");
  run.timing.collect = phase.seconds();
  run.timing.total = total.seconds();
  return run;
}

}  // namespace rtbench
