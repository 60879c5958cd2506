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
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "rtbench/model.hpp"
#include "rtbench/solver_run.hpp"

namespace rtbench {

struct SaConfig {
  int n_trajectories = 256;
  int n_steps = 1000;
  int n_passes = 1;
  double t0 = 10.0;
  double t1 = 0.05;
  std::uint64_t seed = 0;
  int threads = 1;
  bool keep_states = false;

  void validate() const;
};

/// Geometric sequence of inverse temperatures from 1/t0 to 1/t1. A single
/// step yields {1/t0}.
std::vector<double> beta_schedule(double t0, double t1, int n_steps);

/// Metropolis rule: accept when delta < 0, otherwise with probability
/// exp(-delta * beta). No uniform is drawn for downhill moves.
inline bool metropolis_accept(double delta, double beta, std::mt19937_64& rng) {
  if (delta < 0.0) return true;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < std::exp(-delta * beta);
}

/// Flip costs of one trajectory: delta_v = -2 s_v (sum_w J_vw s_w + h_v).
Eigen::RowVectorXd qubo_flip_costs(const Eigen::MatrixXd& J, const Eigen::VectorXd& h,
                                   const Eigen::RowVectorXd& s);

/// Called after each accepted flip with the post-flip state and delta cache.
using QuboFlipObserver =
    std::function<void(int trajectory, int variable, const Eigen::RowVectorXd& s,
                       const Eigen::RowVectorXd& delta)>;

/// Metropolis annealing on a quadratic instance with an incrementally updated
/// delta cache. Trajectories sweep variables in ascending order; a uniform
/// draw is consumed only when delta >= 0.
SolverRun sa_solve_qubo(const IsingInstance& inst, const SaConfig& config,
                        const QuboFlipObserver& observer = {});

/// Per-variable slices of a cubic instance, for delta recomputation.
struct HuboSlices {
  struct Triple {
    int j, k;
    double value;
  };
  struct Pair {
    int w;
    double value;
  };
  std::vector<std::vector<Triple>> triples;
  std::vector<std::vector<Pair>> pairs;
  Eigen::VectorXd h;

  explicit HuboSlices(const HuboInstance& inst);
};

/// delta_r = E(s_r with v flipped) - E(s_r) for every row of `spins`.
Eigen::VectorXd hubo_flip_costs(const HuboSlices& slices, const Eigen::MatrixXd& spins, int v);

/// Annealing on a cubic instance; flip costs of variable v are recomputed
/// from the current states before each acceptance sweep over trajectories.
SolverRun sa_solve_hubo(const HuboInstance& inst, const SaConfig& config);

}  // namespace rtbench
