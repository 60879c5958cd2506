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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rtbench/bench.hpp"
#include "rtbench/instance_gen.hpp"
#include "rtbench/instance_io.hpp"
#include "rtbench/metrics.hpp"
#include "rtbench/model.hpp"
#include "rtbench/sa.hpp"
#include "rtbench/sbm.hpp"
#include "rtbench/simon.hpp"

using namespace rtbench;

namespace {

int failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Quadratization -------------------------------------------------------------

void quadratization_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> g;
  double worst = 0.0;
  long states = 0;
  bool structure_ok = true;
  for (int inst_id = 0; inst_id < 200; ++inst_id) {
    const int n = 3 + inst_id % 10;
    std::bernoulli_distribution keep(0.15 + 0.5 * ((inst_id * 7) % 11) / 10.0);
    HuboInstance h(n);
    for (int i = 0; i < n; ++i) {
      if (keep(rng)) h.add_linear(i, g(rng));
      for (int j = i + 1; j < n; ++j) {
        if (keep(rng)) h.add_pair(i, j, g(rng));
        for (int k = j + 1; k < n; ++k)
          if (keep(rng)) h.add_triple(i, j, k, g(rng));
      }
    }
    const Quadratization q = reduce_hubo_to_qubo(h);
    const int m = q.ising.size();

    // Neighbor lists of every auxiliary spin, read off the reduced instance.
    std::vector<std::vector<std::pair<int, double>>> aux_nb(m - n);
    for (const auto& [key, v] : q.ising.couplings()) {
      if (key[0] >= n && key[1] >= n) structure_ok = false;  // aux spins never meet
      if (key[1] >= n) aux_nb[key[1] - n].push_back({key[0], v});
    }

    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      SpinState full(m);
      for (int i = 0; i < n; ++i) full(i) = (k >> i) & 1U ? -1 : 1;
      double direct = 0.0;
      for (const auto& [i, v] : h.linear_terms()) direct += v * full(i);
      for (const auto& [key, v] : h.pair_terms()) direct += v * full(key[0]) * full(key[1]);
      for (const auto& [key, v] : h.triple_terms()) direct += v * full(key[0]) * full(key[1]) * full(key[2]);
      // Aux spins are mutually uncoupled, so each one independently takes the
      // sign opposite to its local field.
      for (int a = 0; a < m - n; ++a) {
        double field = q.ising.field(n + a);
        for (const auto& [w, v] : aux_nb[a]) field += v * full(w);
        full(n + a) = field > 0.0 ? -1 : 1;
      }
      worst = std::max(worst, std::abs(ising_energy(q.ising, full) + q.offset - direct));
      ++states;
    }
  }
  const double elapsed = seconds_since(t0);
  report(structure_ok && worst <= 1e-9 && elapsed < 120.0, "quadratization_exactness",
         fmt("200 instances, %ld states, max |min_aux E_red + offset - E_hubo| = %.3g (tol 1e-9), %.2f s (limit 120 s)",
             states, worst, elapsed));
}

void quadratization_global_minimum() {
  // Joint minimum over original and auxiliary spins, on instances small enough to enumerate.
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    const int n = 4 + t % 6;
    HuboInstance h(n);
    for (int i = 0; i + 1 < n; ++i) h.add_pair(i, i + 1, g(rng));
    for (int i = 0; i + 2 < n; ++i) h.add_triple(i, i + 1, i + 2, g(rng));
    h.add_triple(0, n / 2, n - 1, g(rng));
    const Quadratization q = reduce_hubo_to_qubo(h);
    const double reduced = brute_force_ground_state(q.ising).energy + q.offset;
    worst = std::max(worst, std::abs(reduced - brute_force_ground_state(h).energy));
  }
  report(worst <= 1e-9, "quadratization_ground_energy",
         fmt("30 instances, max |min E_red + offset - min E_hubo| = %.3g (tol 1e-9)", worst));
}

// Simon ----------------------------------------------------------------------

void simon_oracles_exhaustive() {
  std::mt19937_64 rng(5);
  long checked = 0;
  bool ok = true;
  for (int n = 1; n <= 12; ++n) {
    std::vector<std::uint64_t> periods;
    if (n <= 8)
      for (std::uint64_t p = 1; p <= simon::low_mask(n); ++p) periods.push_back(p);
    else
      for (int k = 0; k < 64; ++k) periods.push_back(std::uniform_int_distribution<std::uint64_t>(1, simon::low_mask(n))(rng));
    for (std::uint64_t p : periods) {
      const simon::AffineOracle f = simon::AffineOracle::random(simon::BitVec(n, p), rng);
      std::map<std::uint64_t, std::uint64_t> first;
      for (std::uint64_t x = 0; x <= simon::low_mask(n); ++x) {
        const std::uint64_t y = f(simon::BitVec(n, x)).bits();
        if (y != f(simon::BitVec(n, x ^ p)).bits()) ok = false;
        const auto [it, fresh] = first.emplace(y, x);
        if (!fresh && (it->second ^ x) != p) ok = false;  // only x and x^p may collide
      }
      if (first.size() != (std::size_t{1} << (n - 1))) ok = false;
      if (simon::solve_simon_general(n, f).bits() != p) ok = false;
      ++checked;
    }
  }
  report(ok, "simon_oracle_exhaustive",
         fmt("%ld oracles for n <= 12, every input checked for f(x)=f(x^p) and exact 2-to-1 structure", checked));
}

void simon_randomized_trials() {
  std::mt19937_64 rng(2026);
  const simon::BinomPrefixTable table(32);
  int general_ok = 0, restricted_ok = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 31;  // 2..32
    const simon::BitVec p(n, std::uniform_int_distribution<std::uint64_t>(1, simon::low_mask(n))(rng));
    const simon::AffineOracle f = simon::AffineOracle::random(p, rng);
    general_ok += simon::solve_simon_general(n, f) == p;

    const int w = std::uniform_int_distribution<int>(1, std::min(n, 7))(rng);
    const int weight = std::uniform_int_distribution<int>(1, w)(rng);
    const simon::BitVec q = simon::random_period_with_weight(n, weight, rng);
    const simon::AffineOracle h = simon::AffineOracle::random(q, rng);
    restricted_ok += simon::solve_simon_restricted(n, w, h, table) == q;
  }
  report(general_ok == trials && restricted_ok == trials, "simon_randomized_recovery",
         fmt("general %d/%d, restricted %d/%d (n = 2..32, wt(p) <= w <= 7)", general_ok, trials, restricted_ok, trials));
}

void constrained_enumeration() {
  const simon::BinomPrefixTable table(64);
  long compared = 0;
  bool ok = true;
  for (int n = 1; n <= 20 && ok; ++n) {
    std::vector<std::vector<std::uint64_t>> lists(7);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
      for (int w = std::popcount(x); w <= 6; ++w) lists[w].push_back(x);
    for (int w = 0; w <= std::min(n, 6) && ok; ++w) {
      if (table(n, w) != lists[w].size()) ok = false;
      for (std::uint64_t i = 0; i < lists[w].size() && ok; ++i, ++compared)
        ok = simon::ith_constrained_vector(n, w, i, table).bits() == lists[w][i];
    }
  }
  const std::uint64_t v = simon::count_restricted_vectors(29, 7, table);
  report(ok && v == 26292, "constrained_enumeration",
         fmt("%ld indices match brute-force lexicographic order (n <= 20, w <= 6); v(29,7) = %llu (expected 26292)",
             compared, static_cast<unsigned long long>(v)));
}

void restricted_scaling() {
  const simon::BinomPrefixTable table(64);
  std::mt19937_64 rng(11);
  std::vector<std::pair<double, double>> points;
  std::string detail;
  for (int n = 24; n <= 48; n += 4) {
    std::vector<double> times;
    for (int rep = 0; rep < 7; ++rep) {
      const simon::BitVec p = simon::random_period_with_weight(n, 1 + rep % 4, rng);
      const simon::AffineOracle f = simon::AffineOracle::random(p, rng);
      const auto t0 = std::chrono::steady_clock::now();
      const simon::BitVec found = simon::solve_simon_restricted(n, 4, f, table, 1);
      times.push_back(seconds_since(t0));
      if (found != p) times.back() = kInfinity;
    }
    std::sort(times.begin(), times.end());
    points.push_back({static_cast<double>(n), times.front()});
    detail += fmt(" %d:%.2es", n, times.front());
  }
  const FitResult fit = fit_power_law(points);

  double worst_297 = 0.0;
  bool correct = true;
  for (int rep = 0; rep < 5; ++rep) {
    const simon::TrialResult r = simon::run_trial(29, 7, simon::Mode::Restricted, 100 + rep, 1);
    correct = correct && r.correct;
    worst_297 = std::max(worst_297, r.timing.total);
  }
  report(fit.alpha <= 7.0, "restricted_scaling_exponent",
         fmt("w=4, n in [24,48]: alpha = %.3f +- %.3f (limit 7); min times%s", fit.alpha, fit.alpha_stderr, detail.c_str()));
  report(correct && worst_297 < 1.0, "restricted_n29_w7_runtime",
         fmt("5 trials at n=29, w=7 single-threaded: all correct = %s, slowest total %.4f s (limit 1 s)",
             correct ? "yes" : "no", worst_297));
}

// Heuristic solvers -------------------------------------------------------------

IsingInstance random_16_spin(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  IsingInstance inst(16);
  for (int i = 0; i < 16; ++i) {
    inst.add_field(i, g(rng));
    for (int j = i + 1; j < 16; ++j) inst.add_coupling(i, j, g(rng));
  }
  return inst;
}

void solver_quality() {
  int sbm_hits = 0, sa_hits = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 100; ++trial) {
    const IsingInstance inst = random_16_spin(9000 + trial);
    // Ground energy by an independent scan over all 2^16 states.
    const Eigen::MatrixXd J = inst.dense_couplings();
    const Eigen::VectorXd h = inst.field_vector();
    double e0 = kInfinity;
    for (std::uint32_t k = 0; k < (1U << 16); ++k) {
      Eigen::VectorXd s(16);
      for (int i = 0; i < 16; ++i) s(i) = (k >> i) & 1U ? -1.0 : 1.0;
      e0 = std::min(e0, 0.5 * s.dot(J * s) + h.dot(s));
    }
    const double threshold = e0 + 0.01 * std::abs(e0);

    SbmConfig sbm;  // 512 replicas, default schedule
    sbm.seed = trial;
    sbm_hits += sbm_solve(inst, sbm).best_energy <= threshold;

    SaConfig sa;  // 256 trajectories, default schedule
    sa.seed = trial;
    sa_hits += sa_solve_qubo(inst, sa).best_energy <= threshold;
  }
  report(sbm_hits >= 95, "sbm_quality",
         fmt("%d/100 random 16-spin instances within 1%% of the exhaustive ground energy (need 95), 512 replicas", sbm_hits));
  report(sa_hits >= 95, "sa_quality",
         fmt("%d/100 random 16-spin instances within 1%% of the exhaustive ground energy (need 95), 256 trajectories; %.1f s total",
             sa_hits, seconds_since(t0)));
}

void delta_cache_soundness() {
  // Integer couplings keep every sum exact, so the cache must match bit for bit;
  // Gaussian couplings are held to 1e-9.
  long flips_int = 0, flips_real = 0, mismatches_int = 0;
  double worst_real = 0.0;
  for (int variant = 0; variant < 2; ++variant)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      std::mt19937_64 rng(seed + 31 * variant);
      std::normal_distribution<double> g;
      std::uniform_int_distribution<int> z(-5, 5);
      IsingInstance inst(12);
      for (int i = 0; i < 12; ++i) {
        inst.add_field(i, variant == 0 ? z(rng) : g(rng));
        for (int j = i + 1; j < 12; ++j) inst.add_coupling(i, j, variant == 0 ? z(rng) : g(rng));
      }
      const Eigen::MatrixXd J = inst.dense_couplings();
      const Eigen::VectorXd h = inst.field_vector();
      SaConfig c;
      c.n_trajectories = 8;
      c.n_steps = 200;
      c.seed = seed;
      sa_solve_qubo(inst, c, [&](int, int, const Eigen::RowVectorXd& s, const Eigen::RowVectorXd& d) {
        // From scratch: delta_v = -2 s_v (sum_w J_vw s_w + h_v).
        for (int v = 0; v < 12; ++v) {
          double local = h(v);
          for (int w = 0; w < 12; ++w) local += J(v, w) * s(w);
          const double fresh = -2.0 * s(v) * local;
          if (variant == 0)
            mismatches_int += fresh != d(v);
          else
            worst_real = std::max(worst_real, std::abs(fresh - d(v)));
        }
        (variant == 0 ? flips_int : flips_real)++;
      });
    }
  report(mismatches_int == 0 && worst_real <= 1e-9, "delta_cache_soundness",
         fmt("integer couplings: %ld flips, %ld inexact entries; Gaussian couplings: %ld flips, max |error| %.3g (tol 1e-9)",
             flips_int, mismatches_int, flips_real, worst_real));
}

// Metrics ----------------------------------------------------------------------

void tte_algebra() {
  const double a = time_to_epsilon(1.0, 0.99);
  const double b = time_to_epsilon(10.0, 0.5);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  for (int k = 0; k < 10000; ++k) {
    const double t1 = 1e-6 + 1e3 * u(rng), t2 = 1e-6 + 1e3 * u(rng);
    double p1 = u(rng), p2 = u(rng);
    if (p1 == 0.0 || p2 == 0.0) continue;
    if (p1 > p2) std::swap(p1, p2);
    violations += time_to_epsilon(t1, p1) < time_to_epsilon(t1, p2);
    violations += (t1 < t2) && time_to_epsilon(t1, p1) > time_to_epsilon(t2, p1);
  }
  report(a == 1.0 && std::abs(b - 66.4386) <= 1e-3 && violations == 0, "tte_algebra",
         fmt("TTe(1,0.99) = %.17g (exact 1), TTe(10,0.5) = %.6f (66.4386 +- 1e-3), %d monotonicity violations in 1e4 pairs",
             a, b, violations));
}

void timing_variant_sensitivity() {
  // Compute time grows as N^1.5; each run also pays a constant overhead c
  // much larger than compute. Success probability 0.5 at every size.
  std::mt19937_64 rng(8);
  std::normal_distribution<double> noise(0.0, 0.03);
  const double c = 5.0;
  std::vector<ExperimentRecord> records;
  for (int n : {40, 60, 80, 100, 130, 156, 200, 260}) {
    for (int inst = 0; inst < 5; ++inst) {
      ExperimentRecord r;
      r.instance_id = fmt("syn_%d_%d", n, inst);
      r.n = n;
      r.solver = "sbm";
      r.reference_energy = -10.0;
      r.reference_kind = "brute_force";
      for (int k = 0; k < 20; ++k) {
        RunRecord run;
        run.best_energy = k % 2 ? -10.0 : -5.0;
        run.energies = {run.best_energy};
        const double compute = 1e-5 * std::pow(n, 1.5) * (1.0 + noise(rng));
        const double setup = 0.5 * c * (1.0 + noise(rng)), collect = 0.5 * c * (1.0 + noise(rng));
        run.timing = {setup, compute, collect, 0.0, setup + compute + collect};
        r.runs.push_back(run);
      }
      records.push_back(r);
    }
  }
  const auto eps = MetricSpec::parse("tte", 0.01);
  const FitResult fc = summarize(records, eps, TimingVariant::Compute).fits.at("sbm");
  const FitResult ft = summarize(records, eps, TimingVariant::Total).fits.at("sbm");
  report(ft.alpha < fc.alpha, "timing_variant_sensitivity",
         fmt("alpha_compute = %.4f +- %.4f, alpha_total = %.4f +- %.4f (overhead c = %.1f s)", fc.alpha,
             fc.alpha_stderr, ft.alpha, ft.alpha_stderr, c));
}

void power_law_recovery() {
  std::vector<std::pair<double, double>> exact;
  for (double n : {16.0, 24.0, 40.0, 80.0, 100.0, 156.0}) exact.push_back({n, 0.37 * std::pow(n, 2.75)});
  const double err_exact = std::abs(fit_power_law(exact).alpha - 2.75);

  double worst_noisy = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.05);
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k < 20; ++k) {
      const double n = 10.0 * (k + 1);
      pts.push_back({n, n * n * (1.0 + noise(rng))});
    }
    worst_noisy = std::max(worst_noisy, std::abs(fit_power_law(pts).alpha - 2.0));
  }
  report(err_exact <= 1e-9 && worst_noisy <= 0.2, "power_law_recovery",
         fmt("exact data |alpha error| = %.3g (tol 1e-9); 5%% noise, 100 seeds: max |alpha - 2| = %.4f (tol 0.2)",
             err_exact, worst_noisy));
}

// Instances -----------------------------------------------------------------------

void instance_generation() {
  bool ok = true;
  std::string detail;
  for (const char* type : {"cauchy4", "pareto6"})
    for (int n : {80, 100, 130, 156}) {
      const GeneratorConfig config = instance_type_config(type, n, 1000 + n);
      GeneratedInstance g;
      try {
        g = generate_hubo_detailed(config);
      } catch (const std::exception& e) {
        ok = false;
        detail += fmt(" %s/%d failed (%s);", type, n, e.what());
        continue;
      }
      bool inst_ok = g.instance.size() == n;
      for (const auto& round : g.rounds) {
        const TopologyGraph& c = round.topology;
        for (const auto& cls : round.pair_classes) {
          std::set<int> used;
          for (const auto& p : cls) {
            inst_ok = inst_ok && c.has_edge(p[0], p[1]);
            for (int v : p) inst_ok = inst_ok && used.insert(v).second;
          }
        }
        for (const auto& cls : round.triple_classes) {
          std::set<int> used;
          for (const auto& t : cls) {
            bool shape = false;
            for (int k = 0; k < 3; ++k)
              shape = shape || (c.has_edge(t[k], t[(k + 1) % 3]) && c.has_edge(t[k], t[(k + 2) % 3]));
            inst_ok = inst_ok && shape;
            for (int v : t) inst_ok = inst_ok && used.insert(v).second;
          }
        }
      }
      for (const auto& [k, v] : g.instance.triple_terms())
        inst_ok = inst_ok && k[0] < k[1] && k[1] < k[2] && k[2] < n && std::isfinite(v);
      for (const auto& [k, v] : g.instance.pair_terms()) inst_ok = inst_ok && k[0] < k[1] && k[1] < n;
      const bool deterministic =
          serialize_instance(generate_hubo(config)) == serialize_instance(g.instance);
      ok = ok && inst_ok && deterministic;
      detail += fmt(" %s/%d: %zu pairs %zu triples%s;", type, n, g.instance.pair_terms().size(),
                    g.instance.triple_terms().size(), inst_ok && deterministic ? "" : " INVALID");
    }
  report(ok, "instance_generation", "disjoint color classes, path/triangle triples, deterministic:" + detail);
}

}  // namespace

int main() {
  quadratization_exactness();
  quadratization_global_minimum();
  simon_oracles_exhaustive();
  simon_randomized_trials();
  constrained_enumeration();
  restricted_scaling();
  solver_quality();
  delta_cache_soundness();
  tte_algebra();
  timing_variant_sensitivity();
  power_law_recovery();
  instance_generation();
  std::printf("%d criteria failed\n", failures);
  return failures;
}
