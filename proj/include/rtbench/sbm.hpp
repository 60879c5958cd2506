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
#include <optional>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "rtbench/model.hpp"
#include "rtbench/solver_run.hpp"

namespace rtbench {

/// Discrete simulated bifurcation with ternary discretization.
///
///   dq/dt = a0 p
///   dp/dt = -(a0 - a(t)) q - c0 (J f(q) + h),   a(t) = t / T
///
/// integrated by symplectic Euler (q first, then p from the new q). Perfectly
/// inelastic walls at |q| = 1 reset q to sign(q) and p to 0. The coupling term
/// is the negative energy gradient, so the dynamics minimize
/// sum_{i<j} J_ij s_i s_j + sum_i h_i s_i.
struct SbmConfig {
  double a0 = 1.0;
  std::optional<double> c0_override;
  int n_steps = 1000;
  /// Each replica draws its time step log-uniformly from [dt_min, dt_max].
  double dt_min = 0.25;
  double dt_max = 1.25;
  int n_replicas = 512;
  std::uint64_t seed = 0;
  int threads = 1;
  /// Record a binarized best-energy trace point every this many steps (0: final only).
  int trace_every = 0;
  bool keep_states = false;

  void validate() const;
};

/// Positions and momenta, one column per replica.
struct SbmState {
  Eigen::MatrixXd q;
  Eigen::MatrixXd p;
};

struct SbmModel {
  Eigen::SparseMatrix<double> J;  // symmetric, zero diagonal
  Eigen::VectorXd h;
  double a0 = 1.0;
  double c0 = 1.0;
};

/// c0 = 0.7 a0 / (sigma sqrt(N)), sigma the root mean square of the N(N-1)
/// off-diagonal entries of the symmetric coupling matrix.
double default_c0(const IsingInstance& inst, double a0 = 1.0);

SbmModel make_sbm_model(const IsingInstance& inst, double a0, std::optional<double> c0_override = {});

/// 0 when |x| <= 0.7 t/T, otherwise sign(x).
int ternary_f(double x, double t, double T);

/// One integration step. `progress` is t/T at the end of the step (shared by
/// all replicas since every replica runs the same number of steps).
void sbm_step(SbmState& state, const SbmModel& model, const Eigen::VectorXd& dt, double progress);

/// sign(q) with sign(0) = +1.
SpinState binarize(const Eigen::VectorXd& q);

SolverRun sbm_solve(const IsingInstance& inst, const SbmConfig& config);

}  // namespace rtbench
