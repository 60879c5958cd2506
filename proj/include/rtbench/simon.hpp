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

#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rtbench/solver_run.hpp"

namespace rtbench::simon {

inline constexpr int kMaxBits = 64;

/// n-bit vector packed in one word. Position 1 of the tuple (x_1, ..., x_n)
/// is the most significant of the n bits, so numeric order is lexicographic
/// order and the string form reads x_1 first.
class BitVec {
 public:
  BitVec() = default;
  BitVec(int n, std::uint64_t bits);

  static BitVec zero(int n) { return BitVec(n, 0); }
  static BitVec from_string(std::string_view s);

  int size() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  int weight() const;
  bool is_zero() const { return bits_ == 0; }
  std::string to_string() const;

  BitVec operator^(const BitVec& o) const;
  friend bool operator==(const BitVec&, const BitVec&) = default;
  friend auto operator<=>(const BitVec& a, const BitVec& b) { return a.bits_ <=> b.bits_; }

 private:
  int n_ = 0;
  std::uint64_t bits_ = 0;
};

std::uint64_t low_mask(int n);

/// Square bit matrix; row r holds the coefficients of output bit r.
class Gf2Matrix {
 public:
  explicit Gf2Matrix(int n = 0);
  static Gf2Matrix identity(int n);
  static Gf2Matrix from_rows(int n, std::vector<std::uint64_t> rows);

  int size() const { return n_; }
  bool get(int r, int c) const { return (rows_[r] >> c) & 1U; }
  void set(int r, int c, bool v);
  const std::vector<std::uint64_t>& rows() const { return rows_; }

  /// Matrix-vector product over GF(2).
  std::uint64_t apply(std::uint64_t x) const;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

int gf2_rank(const Gf2Matrix& a);

/// Rejection-samples uniform matrices until one has full rank. `attempts`
/// receives the number of matrices drawn.
Gf2Matrix random_invertible_gf2(int n, std::mt19937_64& rng, int* attempts = nullptr);

/// Oracle interface seen by the solvers.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual int bits() const = 0;
  virtual BitVec operator()(const BitVec& x) const = 0;
};

/// f(x) = A * m(x) xor b with m(x) the representative of {x, x xor p} that
/// comes first under the order key (identity by default, i.e. lexicographic).
/// With p = 0 the oracle is the bijection x -> A x xor b. Counts queries.
class AffineOracle final : public Oracle {
 public:
  using OrderKey = std::function<std::uint64_t(std::uint64_t)>;

  AffineOracle(Gf2Matrix a, BitVec offset, BitVec period, OrderKey order = {});

  static AffineOracle random(const BitVec& period, std::mt19937_64& rng);
  static AffineOracle random_one_to_one(int n, std::mt19937_64& rng);

  int bits() const override { return a_.size(); }
  BitVec operator()(const BitVec& x) const override;

  std::uint64_t query_count() const { return queries_->load(std::memory_order_relaxed); }
  void reset_query_count() { queries_->store(0); }

  const BitVec& hidden_period() const { return period_; }
  const Gf2Matrix& matrix() const { return a_; }
  const BitVec& offset() const { return offset_; }

 private:
  Gf2Matrix a_;
  BitVec offset_;
  BitVec period_;
  OrderKey order_;
  std::unique_ptr<std::atomic<std::uint64_t>> queries_;
};

/// S(m, k) = sum_{v<=k} C(m, v) for 0 <= m <= n. Values saturate at 2^64 - 1.
class BinomPrefixTable {
 public:
  explicit BinomPrefixTable(int n);
  int max_bits() const { return n_; }
  /// k > m gives 2^m, k < 0 gives 0.
  std::uint64_t operator()(int m, int k) const;

 private:
  int n_;
  std::vector<std::vector<std::uint64_t>> s_;
};

/// The i-th n-bit vector, in lexicographic order, among those with at most
/// w set bits.
BitVec ith_constrained_vector(int n, int w, std::uint64_t i, const BinomPrefixTable& table);

/// S(floor(n/2), min(w, floor(n/2))) + S(ceil(n/2), min(w, ceil(n/2))).
std::uint64_t count_restricted_vectors(int n, int w, const BinomPrefixTable& table);

/// Meet-in-the-middle collision search over the vectors whose first
/// floor(n/2) or last ceil(n/2) positions are zero. The zero vector is
/// queried once, so 2^ceil(n/2) + 2^floor(n/2) - 1 queries. Returns the hidden
/// period, or zero if no collision exists.
BitVec solve_simon_general(int n, const Oracle& f, int threads = 1);

/// Same search restricted to half-vectors with at most w set bits each.
/// Recovers every period of weight <= w using v(n, w) - 1 queries.
BitVec solve_simon_restricted(int n, int w, const Oracle& f, const BinomPrefixTable& table,
                              int threads = 1);

enum class Mode { General, Restricted };
Mode mode_from_string(const std::string& s);
std::string to_string(Mode m);

struct TrialResult {
  BitVec period;
  BitVec found;
  std::uint64_t queries = 0;
  bool correct = false;
  TimingBreakdown timing;
};

/// Builds a random affine oracle with a hidden period (weight drawn uniformly
/// from 1..w in restricted mode, any nonzero vector in general mode) and
/// solves it. setup covers table and oracle construction, compute the solver.
TrialResult run_trial(int n, int w, Mode mode, std::uint64_t seed, int threads = 1);

/// Uniform random period with exactly `weight` set bits.
BitVec random_period_with_weight(int n, int weight, std::mt19937_64& rng);

}  // namespace rtbench::simon
