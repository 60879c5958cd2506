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

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "rtbench/solver_run.hpp"

namespace rtbench {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Expected time to reach the target at 99% confidence:
///   t_f * log(1 - 0.99) / log(1 - p).
/// p = 1 gives 0. p = 0 throws unless `allow_infinite`, then returns +inf.
double time_to_epsilon(double t_f, double p, bool allow_infinite = false);

struct SuccessEstimate {
  double p_hat = 0.0;
  int n_runs = 0;
  int successes = 0;
  double threshold_energy = 0.0;
};

/// A run succeeds when E <= e0 + epsilon |e0|.
SuccessEstimate estimate_success(const std::vector<double>& run_energies, double e0, double epsilon);

/// R = e / e_gs; requires e_gs < 0.
double approximation_ratio(double e, double e_gs);

/// Earliest trace time whose energy reaches approximation ratio target_r.
std::optional<double> time_to_ratio(const std::vector<TracePoint>& trace, double e_gs, double target_r);

double success_fraction(const std::vector<double>& per_instance_best_r, double threshold);

/// Lower median; infinite entries sort last.
double median_tte(std::vector<double> values);

struct FitResult {
  double alpha = 0.0;
  double alpha_stderr = 0.0;
  double prefactor = 0.0;
  double n_min = 0.0;
  double n_max = 0.0;
  int points = 0;
};

/// Ordinary least squares of log(value) on log(N). Needs at least three
/// points, all positive and finite.
FitResult fit_power_law(const std::vector<std::pair<double, double>>& points);

}  // namespace rtbench
