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

#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"
#include "rtbench/model.hpp"

namespace rtbench {

/// End-user wall time split into phases, in seconds. `total` is measured
/// around the whole run, so it is at least the sum of the phases it covers.
/// `tuning` is hyperparameter search time and is not part of `total`.
struct TimingBreakdown {
  double setup = 0.0;
  double compute = 0.0;
  double collect = 0.0;
  double tuning = 0.0;
  double total = 0.0;

  bool consistent() const;
};

enum class TimingVariant { Compute, Total, TotalPlusTuning };

std::string to_string(TimingVariant v);
TimingVariant timing_variant_from_string(const std::string& s);

/// Picks the run time t_f that a given accounting convention charges.
double charged_time(const TimingBreakdown& t, TimingVariant v);

nlohmann::json to_json(const TimingBreakdown& t);
TimingBreakdown timing_from_json(const nlohmann::json& j);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  void restart() { start_ = std::chrono::steady_clock::now(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct TracePoint {
  double time = 0.0;  // seconds since the start of the compute phase
  double energy = 0.0;
};

/// One stochastic solve over a batch of replicas or trajectories.
struct SolverRun {
  SpinState best_state;
  double best_energy = 0.0;
  std::vector<double> energies;         // final energy of every replica
  std::vector<SpinState> final_states;  // optional spectrum of final states
  std::vector<TracePoint> trace;
  TimingBreakdown timing;
  nlohmann::json hyperparameters = nlohmann::json::object();
};

}  // namespace rtbench
