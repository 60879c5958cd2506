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

#include "rtbench/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rtbench/parallel.hpp"

namespace rtbench {

namespace {

void check_index(int i, int n, const char* what) {
  if (i < 0 || i >= n)
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(i) +
                            " outside [0, " + std::to_string(n) + ")");
}

template <class Map, class Key>
void accumulate(Map& m, const Key& key, double value) {
  m[key] += value;
}

}  // namespace

PairKey canonical_pair(int i, int j) {
  if (i == j) throw std::invalid_argument("pair term with repeated index " + std::to_string(i));
  return i < j ? PairKey{i, j} : PairKey{j, i};
}

TripleKey canonical_triple(int i, int j, int k) {
  TripleKey t{i, j, k};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2])
    throw std::invalid_argument("triple term with repeated index");
  return t;
}

// IsingInstance -------------------------------------------------------------

IsingInstance::IsingInstance(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative variable count");
}

void IsingInstance::add_coupling(int i, int j, double value) {
  check_index(i, n_, "coupling");
  check_index(j, n_, "coupling");
  accumulate(couplings_, canonical_pair(i, j), value);
}

void IsingInstance::add_field(int i, double value) {
  check_index(i, n_, "field");
  accumulate(fields_, i, value);
}

double IsingInstance::coupling(int i, int j) const {
  auto it = couplings_.find(canonical_pair(i, j));
  return it == couplings_.end() ? 0.0 : it->second;
}

double IsingInstance::field(int i) const {
  auto it = fields_.find(i);
  return it == fields_.end() ? 0.0 : it->second;
}

Eigen::MatrixXd IsingInstance::dense_couplings() const {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& [key, v] : couplings_) {
    J(key[0], key[1]) = v;
    J(key[1], key[0]) = v;
  }
  return J;
}

Eigen::SparseMatrix<double> IsingInstance::sparse_couplings() const {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * couplings_.size());
  for (const auto& [key, v] : couplings_) {
    entries.emplace_back(key[0], key[1], v);
    entries.emplace_back(key[1], key[0], v);
  }
  Eigen::SparseMatrix<double> J(n_, n_);
  J.setFromTriplets(entries.begin(), entries.end());
  J.makeCompressed();
  return J;
}

Eigen::VectorXd IsingInstance::field_vector() const {
  Eigen::VectorXd h = Eigen::VectorXd::Zero(n_);
  for (const auto& [i, v] : fields_) h(i) = v;
  return h;
}

// HuboInstance --------------------------------------------------------------

HuboInstance::HuboInstance(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative variable count");
}

void HuboInstance::add_linear(int i, double value) {
  check_index(i, n_, "linear term");
  accumulate(linear_, i, value);
}

void HuboInstance::add_pair(int i, int j, double value) {
  check_index(i, n_, "pair term");
  check_index(j, n_, "pair term");
  accumulate(pairs_, canonical_pair(i, j), value);
}

void HuboInstance::add_triple(int i, int j, int k, double value) {
  check_index(i, n_, "triple term");
  check_index(j, n_, "triple term");
  check_index(k, n_, "triple term");
  accumulate(triples_, canonical_triple(i, j, k), value);
}

IsingInstance HuboInstance::to_ising() const {
  if (!triples_.empty()) throw std::invalid_argument("instance has cubic terms; reduce it first");
  IsingInstance out(n_);
  for (const auto& [i, v] : linear_) out.add_field(i, v);
  for (const auto& [k, v] : pairs_) out.add_coupling(k[0], k[1], v);
  out.metadata = metadata;
  return out;
}

HuboInstance HuboInstance::from_ising(const IsingInstance& inst) {
  HuboInstance out(inst.size());
  for (const auto& [i, v] : inst.fields()) out.add_linear(i, v);
  for (const auto& [k, v] : inst.couplings()) out.add_pair(k[0], k[1], v);
  out.metadata = inst.metadata;
  return out;
}

// Energies ------------------------------------------------------------------

void check_spin_state(const SpinState& s, int n) {
  if (s.size() != n)
    throw std::invalid_argument("spin state has length " + std::to_string(s.size()) +
                                ", instance has " + std::to_string(n) + " variables");
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) != 1 && s(i) != -1) throw std::invalid_argument("spin values must be -1 or +1");
}

double ising_energy(const IsingInstance& inst, const SpinState& s) {
  check_spin_state(s, inst.size());
  double e = 0.0;
  for (const auto& [k, v] : inst.couplings()) e += v * s(k[0]) * s(k[1]);
  for (const auto& [i, v] : inst.fields()) e += v * s(i);
  return e;
}

double hubo_energy(const HuboInstance& inst, const SpinState& s) {
  check_spin_state(s, inst.size());
  double e = 0.0;
  for (const auto& [t, v] : inst.triple_terms()) e += v * s(t[0]) * s(t[1]) * s(t[2]);
  for (const auto& [k, v] : inst.pair_terms()) e += v * s(k[0]) * s(k[1]);
  for (const auto& [i, v] : inst.linear_terms()) e += v * s(i);
  return e;
}

double hubo_energy_tensor_form(const HuboInstance& inst, const SpinState& s) {
  check_spin_state(s, inst.size());
  const int n = inst.size();
  const Eigen::VectorXd x = s.cast<double>();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [k, v] : inst.pair_terms()) {
    J(k[0], k[1]) = v;
    J(k[1], k[0]) = v;
  }
  Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
  for (const auto& [i, v] : inst.linear_terms()) h(i) = v;

  // K_i s for each slice i, from the fully symmetrized tensor.
  std::vector<Eigen::MatrixXd> K(n, Eigen::MatrixXd::Zero(n, n));
  for (const auto& [t, v] : inst.triple_terms()) {
    const std::array<int, 3> idx = t;
    std::array<int, 3> perm{0, 1, 2};
    do {
      K[idx[perm[0]]](idx[perm[1]], idx[perm[2]]) = v;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  Eigen::VectorXd cubic = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) cubic += (K[i] * x) * x(i);
  return (cubic / 6.0 + 0.5 * J * x + h).dot(x);
}

// Quadratization ------------------------------------------------------------

Quadratization reduce_hubo_to_qubo(const HuboInstance& inst) {
  const int n = inst.size();
  const int aux_count = static_cast<int>(inst.triple_terms().size());
  Quadratization q;
  q.original_size = n;
  q.ising = IsingInstance(n + aux_count);
  for (const auto& [i, v] : inst.linear_terms()) q.ising.add_field(i, v);
  for (const auto& [k, v] : inst.pair_terms()) q.ising.add_coupling(k[0], k[1], v);

  int aux = n;
  for (const auto& [t, c] : inst.triple_terms()) {
    const double mag = std::abs(c);
    const double sgn = c < 0.0 ? -1.0 : 1.0;
    q.offset += 3.0 * mag;
    for (int v : t) {
      q.ising.add_field(v, sgn * mag);
      q.ising.add_coupling(aux, v, 2.0 * mag);
    }
    q.ising.add_field(aux, 2.0 * sgn * mag);
    q.ising.add_coupling(t[0], t[1], mag);
    q.ising.add_coupling(t[0], t[2], mag);
    q.ising.add_coupling(t[1], t[2], mag);
    q.aux_sources.push_back(t);
    ++aux;
  }

  q.ising.metadata = inst.metadata;
  nlohmann::json sources = nlohmann::json::array();
  for (const auto& t : q.aux_sources) sources.push_back({t[0], t[1], t[2]});
  q.ising.metadata["reduction"] = {{"original_n", n},
                                   {"offset", q.offset},
                                   {"aux_sources", std::move(sources)}};
  return q;
}

SpinState optimal_aux_assignment(const Quadratization& q, const SpinState& original) {
  check_spin_state(original, q.original_size);
  const int total = q.ising.size();
  SpinState full(total);
  full.head(q.original_size) = original;
  for (int a = q.original_size; a < total; ++a) {
    // Energy terms linear in the aux spin: field + couplings to its sources.
    double local = q.ising.field(a);
    for (int v : q.aux_sources[a - q.original_size]) local += q.ising.coupling(a, v) * original(v);
    full(a) = local > 0.0 ? -1 : 1;
  }
  return full;
}

double reduced_energy_min_over_aux(const Quadratization& q, const SpinState& original) {
  return ising_energy(q.ising, optimal_aux_assignment(q, original)) + q.offset;
}

// Brute force ---------------------------------------------------------------

SpinState spin_state_from_index(std::uint64_t index, int n) {
  SpinState s(n);
  for (int i = 0; i < n; ++i) s(i) = (index >> (n - 1 - i)) & 1U ? -1 : 1;
  return s;
}

namespace {

template <class Energy>
GroundState exhaustive_minimum(int n, int cap, int threads, Energy&& energy) {
  if (n > cap || n > 62)
    throw std::invalid_argument("brute force limited to " + std::to_string(cap) +
                                " variables, instance has " + std::to_string(n));
  const std::uint64_t states = std::uint64_t{1} << n;
  const int workers = std::max(1, threads);
  std::vector<double> best_e(workers, std::numeric_limits<double>::infinity());
  std::vector<std::uint64_t> best_idx(workers, 0);

  // One chunk per worker; each chunk keeps its first minimum.
  parallel_for(static_cast<std::size_t>(workers), workers, [&](std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w) {
      const std::uint64_t begin = states * w / workers;
      const std::uint64_t end = states * (w + 1) / workers;
      SpinState s(n);
      for (std::uint64_t k = begin; k < end; ++k) {
        for (int i = 0; i < n; ++i) s(i) = (k >> (n - 1 - i)) & 1U ? -1 : 1;
        const double e = energy(s);
        if (e < best_e[w]) {
          best_e[w] = e;
          best_idx[w] = k;
        }
      }
    }
  });

  std::size_t winner = 0;
  for (std::size_t w = 1; w < best_e.size(); ++w)
    if (best_e[w] < best_e[winner]) winner = w;
  return {spin_state_from_index(best_idx[winner], n), best_e[winner]};
}

}  // namespace

GroundState brute_force_ground_state(const IsingInstance& inst, int cap, int threads) {
  const int n = inst.size();
  // Same summation order as ising_energy so that energies agree bitwise.
  return exhaustive_minimum(n, cap, threads, [&](const SpinState& s) {
    double e = 0.0;
    for (const auto& [k, v] : inst.couplings()) e += v * s(k[0]) * s(k[1]);
    for (const auto& [i, v] : inst.fields()) e += v * s(i);
    return e;
  });
}

GroundState brute_force_ground_state(const HuboInstance& inst, int cap, int threads) {
  return exhaustive_minimum(inst.size(), cap, threads,
                            [&](const SpinState& s) { return hubo_energy(inst, s); });
}

}  // namespace rtbench
