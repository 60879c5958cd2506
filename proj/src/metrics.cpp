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

#include "rtbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtbench {

// Timing ----------------------------------------------------------------------

bool TimingBreakdown::consistent() const {
  constexpr double slack = 1e-12;
  return setup >= 0.0 && compute >= 0.0 && collect >= 0.0 && tuning >= 0.0 && total >= 0.0 &&
         total + slack >= setup + compute + collect;
}

std::string to_string(TimingVariant v) {
  switch (v) {
    case TimingVariant::Compute: return "compute";
    case TimingVariant::Total: return "total";
    case TimingVariant::TotalPlusTuning: return "total+tuning";
  }
  return "?";
}

TimingVariant timing_variant_from_string(const std::string& s) {
  if (s == "compute") return TimingVariant::Compute;
  if (s == "total") return TimingVariant::Total;
  if (s == "total+tuning" || s == "total_tuning") return TimingVariant::TotalPlusTuning;
  throw std::invalid_argument("unknown timing variant '" + s + "'");
}

double charged_time(const TimingBreakdown& t, TimingVariant v) {
  switch (v) {
    case TimingVariant::Compute: return t.compute;
    case TimingVariant::Total: return t.total;
    case TimingVariant::TotalPlusTuning: return t.total + t.tuning;
  }
  return t.total;
}

nlohmann::json to_json(const TimingBreakdown& t) {
  return {{"setup", t.setup}, {"compute", t.compute}, {"collect", t.collect},
          {"tuning", t.tuning}, {"total", t.total}};
}

TimingBreakdown timing_from_json(const nlohmann::json& j) {
  TimingBreakdown t;
  t.setup = j.at("setup").get<double>();
  t.compute = j.at("compute").get<double>();
  t.collect = j.at("collect").get<double>();
  t.tuning = j.value("tuning", 0.0);
  t.total = j.at("total").get<double>();
  return t;
}

// Metrics ---------------------------------------------------------------------

double time_to_epsilon(double t_f, double p, bool allow_infinite) {
  if (!(t_f > 0.0) || !std::isfinite(t_f)) throw std::invalid_argument("time_to_epsilon needs finite t_f > 0");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("success probability outside [0, 1]");
  if (p == 0.0) {
    if (allow_infinite) return kInfinity;
    throw std::domain_error("time_to_epsilon undefined for p = 0");
  }
  if (p == 1.0) return 0.0;
  // 1 - p is exact for p >= 0.5; log1p keeps precision for small p.
  const double log_miss = p >= 0.5 ? std::log(1.0 - p) : std::log1p(-p);
  return t_f * (std::log(1.0 - 0.99) / log_miss);
}

SuccessEstimate estimate_success(const std::vector<double>& run_energies, double e0, double epsilon) {
  if (run_energies.empty()) throw std::invalid_argument("estimate_success needs at least one run");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  SuccessEstimate est;
  est.threshold_energy = e0 + epsilon * std::abs(e0);
  est.n_runs = static_cast<int>(run_energies.size());
  for (double e : run_energies)
    if (e <= est.threshold_energy) ++est.successes;
  est.p_hat = static_cast<double>(est.successes) / est.n_runs;
  return est;
}

double approximation_ratio(double e, double e_gs) {
  if (!(e_gs < 0.0)) throw std::domain_error("approximation ratio needs a negative ground energy");
  return e / e_gs;
}

std::optional<double> time_to_ratio(const std::vector<TracePoint>& trace, double e_gs, double target_r) {
  if (trace.empty()) throw std::invalid_argument("time_to_ratio needs a non-empty trace");
  for (std::size_t k = 1; k < trace.size(); ++k)
    if (trace[k].time < trace[k - 1].time) throw std::invalid_argument("trace timestamps decrease");
  for (const auto& tp : trace)
    if (approximation_ratio(tp.energy, e_gs) >= target_r) return tp.time;
  return std::nullopt;
}

double success_fraction(const std::vector<double>& per_instance_best_r, double threshold) {
  if (per_instance_best_r.empty()) throw std::invalid_argument("success_fraction needs instances");
  const auto hits = std::count_if(per_instance_best_r.begin(), per_instance_best_r.end(),
                                  [&](double r) { return r >= threshold; });
  return static_cast<double>(hits) / per_instance_best_r.size();
}

double median_tte(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty list");
  const std::size_t k = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + k, values.end());
  return values[k];
}

FitResult fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("power-law fit needs at least 3 points");
  const double count = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  FitResult fit;
  fit.n_min = kInfinity;
  fit.n_max = -kInfinity;
  for (const auto& [n, y] : points) {
    if (!(n > 0.0) || !(y > 0.0) || !std::isfinite(n) || !std::isfinite(y))
      throw std::invalid_argument("power-law fit needs positive finite data");
    mx += std::log(n);
    my += std::log(y);
    fit.n_min = std::min(fit.n_min, n);
    fit.n_max = std::max(fit.n_max, n);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, y] : points) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("power-law fit needs at least two distinct sizes");
  fit.alpha = sxy / sxx;
  const double intercept = my - fit.alpha * mx;
  double ssr = 0.0;
  for (const auto& [n, y] : points) {
    const double res = std::log(y) - (intercept + fit.alpha * std::log(n));
    ssr += res * res;
  }
  fit.alpha_stderr = std::sqrt(ssr / (count - 2.0) / sxx);
  fit.prefactor = std::exp(intercept);
  fit.points = static_cast<int>(points.size());
  return fit;
}

}  // namespace rtbench
