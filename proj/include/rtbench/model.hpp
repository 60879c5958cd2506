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

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "json.hpp"

namespace rtbench {

using PairKey = std::array<int, 2>;
using TripleKey = std::array<int, 3>;

/// Spin configuration; every entry is -1 or +1.
using SpinState = Eigen::VectorXi;

/// Ising problem H(s) = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i.
///
/// Couplings are stored sparsely keyed by the sorted index pair. Adding a
/// coupling to an existing pair accumulates.
class IsingInstance {
 public:
  IsingInstance() = default;
  explicit IsingInstance(int n);

  int size() const { return n_; }

  void add_coupling(int i, int j, double value);
  void add_field(int i, double value);

  double coupling(int i, int j) const;
  double field(int i) const;

  const std::map<PairKey, double>& couplings() const { return couplings_; }
  const std::map<int, double>& fields() const { return fields_; }

  /// Symmetric matrix with J(i,j) = J(j,i) = J_ij and a zero diagonal, so that
  /// H(s) = s^T J s / 2 + h^T s.
  Eigen::MatrixXd dense_couplings() const;
  Eigen::SparseMatrix<double> sparse_couplings() const;
  Eigen::VectorXd field_vector() const;

  nlohmann::json metadata;

 private:
  int n_ = 0;
  std::map<PairKey, double> couplings_;
  std::map<int, double> fields_;
};

/// Cubic HUBO problem: linear, pair and triple terms over +-1 spins.
class HuboInstance {
 public:
  HuboInstance() = default;
  explicit HuboInstance(int n);

  int size() const { return n_; }

  void add_linear(int i, double value);
  void add_pair(int i, int j, double value);
  void add_triple(int i, int j, int k, double value);

  const std::map<int, double>& linear_terms() const { return linear_; }
  const std::map<PairKey, double>& pair_terms() const { return pairs_; }
  const std::map<TripleKey, double>& triple_terms() const { return triples_; }

  bool is_quadratic() const { return triples_.empty(); }

  /// Throws if any triple term is present.
  IsingInstance to_ising() const;
  static HuboInstance from_ising(const IsingInstance& inst);

  nlohmann::json metadata;

 private:
  int n_ = 0;
  std::map<int, double> linear_;
  std::map<PairKey, double> pairs_;
  std::map<TripleKey, double> triples_;
};

PairKey canonical_pair(int i, int j);
TripleKey canonical_triple(int i, int j, int k);

void check_spin_state(const SpinState& s, int n);

double ising_energy(const IsingInstance& inst, const SpinState& s);
double hubo_energy(const HuboInstance& inst, const SpinState& s);

/// Energy through the symmetrized dense form
///   P(s) = ( 1/6 sum_i (K_i s) s_i + 1/2 J s + h )^T s
/// with K symmetric under index permutation and zero on repeated indices.
/// Used to cross-check the sparse evaluation.
double hubo_energy_tensor_form(const HuboInstance& inst, const SpinState& s);

/// Result of replacing every cubic term by a quadratic gadget with one
/// auxiliary spin.
struct Quadratization {
  IsingInstance ising;
  /// aux_sources[a] is the triple replaced by spin original_size + a.
  std::vector<TripleKey> aux_sources;
  int original_size = 0;
  /// Constant dropped from the Ising energy. The HUBO-equivalent energy of a
  /// reduced state is ising_energy + offset.
  double offset = 0.0;
};

/// Each term c * s_i s_j s_k becomes
///   |c| * ( 3 + sgn(c) (s_i + s_j + s_k + 2 a) + 2 a (s_i + s_j + s_k)
///           + s_i s_j + s_i s_k + s_j s_k ),
/// whose minimum over the auxiliary spin a equals c * s_i s_j s_k.
Quadratization reduce_hubo_to_qubo(const HuboInstance& inst);

/// Fills in the auxiliary spins minimizing the reduced energy for a fixed
/// assignment of the original spins. Each auxiliary spin only appears in its
/// own gadget, so the joint minimum factorizes.
SpinState optimal_aux_assignment(const Quadratization& q, const SpinState& original);

/// HUBO-equivalent energy of a state of the original variables.
double reduced_energy_min_over_aux(const Quadratization& q, const SpinState& original);

struct GroundState {
  SpinState state;
  double energy = 0.0;
};

inline constexpr int kDefaultBruteForceCap = 24;

/// Exhaustive minimum. State index k maps spin i to -1 when bit (n-1-i) of k
/// is set, so ties resolve to the lexicographically smallest state with +1
/// ordered before -1. The result does not depend on `threads`.
GroundState brute_force_ground_state(const IsingInstance& inst,
                                     int cap = kDefaultBruteForceCap, int threads = 1);
GroundState brute_force_ground_state(const HuboInstance& inst,
                                     int cap = kDefaultBruteForceCap, int threads = 1);

/// Decodes a brute-force enumeration index into a spin state.
SpinState spin_state_from_index(std::uint64_t index, int n);

}  // namespace rtbench
