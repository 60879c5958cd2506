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

#include "rtbench/simon.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rtbench/parallel.hpp"

namespace rtbench::simon {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

void check_bits(int n) {
  if (n < 1 || n > kMaxBits)
    throw std::invalid_argument("bit width must be in [1, 64], got " + std::to_string(n));
}

}  // namespace

std::uint64_t low_mask(int n) { return n >= 64 ? kSaturated : (std::uint64_t{1} << n) - 1; }

// BitVec ------------------------------------------------------------------------

BitVec::BitVec(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n < 0 || n > kMaxBits) throw std::invalid_argument("bit width must be in [0, 64]");
  if (bits & ~low_mask(n)) throw std::invalid_argument("bits set beyond width");
}

BitVec BitVec::from_string(std::string_view s) {
  std::uint64_t bits = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string may contain only 0 and 1");
    bits = (bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return BitVec(static_cast<int>(s.size()), bits);
}

int BitVec::weight() const { return std::popcount(bits_); }

std::string BitVec::to_string() const {
  std::string s(n_, '0');
  for (int b = 0; b < n_; ++b)
    if ((bits_ >> (n_ - 1 - b)) & 1U) s[b] = '1';
  return s;
}

BitVec BitVec::operator^(const BitVec& o) const {
  if (n_ != o.n_) throw std::invalid_argument("xor of vectors with different widths");
  return BitVec(n_, bits_ ^ o.bits_);
}

// Gf2Matrix ---------------------------------------------------------------------

Gf2Matrix::Gf2Matrix(int n) : n_(n), rows_(n, 0) {
  if (n < 0 || n > kMaxBits) throw std::invalid_argument("matrix size must be in [0, 64]");
}

Gf2Matrix Gf2Matrix::identity(int n) {
  Gf2Matrix m(n);
  for (int r = 0; r < n; ++r) m.rows_[r] = std::uint64_t{1} << r;
  return m;
}

Gf2Matrix Gf2Matrix::from_rows(int n, std::vector<std::uint64_t> rows) {
  Gf2Matrix m(n);
  if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("row count mismatch");
  for (auto r : rows)
    if (r & ~low_mask(n)) throw std::invalid_argument("row has bits beyond width");
  m.rows_ = std::move(rows);
  return m;
}

void Gf2Matrix::set(int r, int c, bool v) {
  if (v)
    rows_[r] |= std::uint64_t{1} << c;
  else
    rows_[r] &= ~(std::uint64_t{1} << c);
}

std::uint64_t Gf2Matrix::apply(std::uint64_t x) const {
  std::uint64_t y = 0;
  for (int r = 0; r < n_; ++r) y |= static_cast<std::uint64_t>(std::popcount(rows_[r] & x) & 1) << r;
  return y;
}

int gf2_rank(const Gf2Matrix& a) {
  std::vector<std::uint64_t> rows = a.rows();
  int rank = 0;
  for (int col = 0; col < a.size() && rank < static_cast<int>(rows.size()); ++col) {
    const std::uint64_t bit = std::uint64_t{1} << col;
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](std::uint64_t r) { return r & bit; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (static_cast<int>(r) != rank && (rows[r] & bit)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

Gf2Matrix random_invertible_gf2(int n, std::mt19937_64& rng, int* attempts) {
  check_bits(n);
  int tries = 0;
  while (true) {
    ++tries;
    std::vector<std::uint64_t> rows(n);
    for (auto& r : rows) r = rng() & low_mask(n);
    Gf2Matrix m = Gf2Matrix::from_rows(n, std::move(rows));
    if (gf2_rank(m) == n) {
      if (attempts) *attempts = tries;
      return m;
    }
  }
}

// Oracle ------------------------------------------------------------------------

AffineOracle::AffineOracle(Gf2Matrix a, BitVec offset, BitVec period, OrderKey order)
    : a_(std::move(a)),
      offset_(offset),
      period_(period),
      order_(std::move(order)),
      queries_(std::make_unique<std::atomic<std::uint64_t>>(0)) {
  if (offset_.size() != a_.size() || period_.size() != a_.size())
    throw std::invalid_argument("oracle component widths differ");
  if (gf2_rank(a_) != a_.size()) throw std::invalid_argument("oracle matrix is not invertible over GF(2)");
}

AffineOracle AffineOracle::random(const BitVec& period, std::mt19937_64& rng) {
  const int n = period.size();
  Gf2Matrix a = random_invertible_gf2(n, rng);
  BitVec b(n, rng() & low_mask(n));
  return AffineOracle(std::move(a), b, period);
}

AffineOracle AffineOracle::random_one_to_one(int n, std::mt19937_64& rng) {
  return random(BitVec::zero(n), rng);
}

BitVec AffineOracle::operator()(const BitVec& x) const {
  if (x.size() != bits()) throw std::invalid_argument("oracle input has wrong width");
  queries_->fetch_add(1, std::memory_order_relaxed);
  const std::uint64_t u = x.bits();
  const std::uint64_t v = u ^ period_.bits();
  const std::uint64_t rep = order_ ? (order_(u) <= order_(v) ? u : v) : std::min(u, v);
  return BitVec(bits(), a_.apply(rep) ^ offset_.bits());
}

// Prefix sums -------------------------------------------------------------------

BinomPrefixTable::BinomPrefixTable(int n) : n_(n) {
  if (n < 0 || n > kMaxBits) throw std::invalid_argument("table size must be in [0, 64]");
  std::vector<std::uint64_t> binom(n + 1, 0), next(n + 1, 0);
  s_.resize(n + 1);
  binom[0] = 1;
  for (int m = 0; m <= n; ++m) {
    if (m > 0) {
      next.assign(n + 1, 0);
      next[0] = 1;
      for (int k = 1; k <= m; ++k) next[k] = sat_add(binom[k - 1], binom[k]);
      binom.swap(next);
    }
    s_[m].resize(m + 1);
    std::uint64_t acc = 0;
    for (int k = 0; k <= m; ++k) s_[m][k] = acc = sat_add(acc, binom[k]);
  }
}

std::uint64_t BinomPrefixTable::operator()(int m, int k) const {
  if (m < 0 || m > n_) throw std::out_of_range("prefix table row out of range");
  if (k < 0) return 0;
  return s_[m][std::min(k, m)];
}

BitVec ith_constrained_vector(int n, int w, std::uint64_t i, const BinomPrefixTable& table) {
  check_bits(n);
  if (w < 0 || w > n) throw std::invalid_argument("weight cap must be in [0, n]");
  if (n > table.max_bits()) throw std::invalid_argument("prefix table too small");
  if (i >= table(n, w)) throw std::out_of_range("constrained vector index out of range");
  std::uint64_t x = 0;
  int v = w;
  for (int b = 1; b <= n && v > 0; ++b) {
    const std::uint64_t zeros_first = table(n - b, v);
    if (i >= zeros_first) {
      x |= std::uint64_t{1} << (n - b);
      i -= zeros_first;
      --v;
    }
  }
  return BitVec(n, x);
}

std::uint64_t count_restricted_vectors(int n, int w, const BinomPrefixTable& table) {
  if (w < 0 || w > n) throw std::invalid_argument("weight cap must be in [0, n]");
  const int lo = n / 2, hi = n - lo;
  return sat_add(table(lo, std::min(w, lo)), table(hi, std::min(w, hi)));
}

// Solvers -----------------------------------------------------------------------

namespace {

BitVec find_collision(int n, const std::vector<std::uint64_t>& xs, const Oracle& f, int threads) {
  std::vector<std::uint64_t> ys(xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) ys[k] = f(BitVec(n, xs[k])).bits();
  });
  std::vector<std::uint32_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return ys[a] != ys[b] ? ys[a] < ys[b] : a < b;
  });
  for (std::size_t k = 0; k + 1 < order.size(); ++k)
    if (ys[order[k]] == ys[order[k + 1]]) return BitVec(n, xs[order[k]] ^ xs[order[k + 1]]);
  return BitVec::zero(n);
}

void check_oracle(int n, const Oracle& f) {
  check_bits(n);
  if (f.bits() != n) throw std::invalid_argument("oracle width differs from n");
}

}  // namespace

BitVec solve_simon_general(int n, const Oracle& f, int threads) {
  check_oracle(n, f);
  if (n > 62) throw std::invalid_argument("general solver limited to 62 bits");
  const int lo = n / 2, hi = n - lo;
  std::vector<std::uint64_t> xs;
  xs.reserve((std::size_t{1} << hi) + (std::size_t{1} << lo) - 1);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << hi); ++i) xs.push_back(i);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << lo); ++i) xs.push_back(i << hi);
  return find_collision(n, xs, f, threads);
}

BitVec solve_simon_restricted(int n, int w, const Oracle& f, const BinomPrefixTable& table, int threads) {
  check_oracle(n, f);
  if (w < 0 || w > n) throw std::invalid_argument("weight cap must be in [0, n]");
  if (table.max_bits() < n) throw std::invalid_argument("prefix table too small");
  const int lo = n / 2, hi = n - lo;
  const int w_hi = std::min(w, hi), w_lo = std::min(w, lo);
  const std::uint64_t count_hi = table(hi, w_hi);
  const std::uint64_t count_lo = lo > 0 ? table(lo, w_lo) : 1;
  std::vector<std::uint64_t> xs;
  xs.reserve(count_hi + count_lo - 1);
  for (std::uint64_t i = 0; i < count_hi; ++i) xs.push_back(ith_constrained_vector(hi, w_hi, i, table).bits());
  for (std::uint64_t i = 1; i < count_lo; ++i)
    xs.push_back(ith_constrained_vector(lo, w_lo, i, table).bits() << hi);
  return find_collision(n, xs, f, threads);
}

Mode mode_from_string(const std::string& s) {
  if (s == "general") return Mode::General;
  if (s == "restricted") return Mode::Restricted;
  throw std::invalid_argument("unknown Simon mode '" + s + "'");
}

std::string to_string(Mode m) { return m == Mode::General ? "general" : "restricted"; }

BitVec random_period_with_weight(int n, int weight, std::mt19937_64& rng) {
  check_bits(n);
  if (weight < 0 || weight > n) throw std::invalid_argument("period weight out of range");
  std::vector<int> positions(n);
  std::iota(positions.begin(), positions.end(), 0);
  std::shuffle(positions.begin(), positions.end(), rng);
  std::uint64_t bits = 0;
  for (int k = 0; k < weight; ++k) bits |= std::uint64_t{1} << positions[k];
  return BitVec(n, bits);
}

TrialResult run_trial(int n, int w, Mode mode, std::uint64_t seed, int threads) {
  Stopwatch total;
  check_bits(n);
  if (mode == Mode::Restricted && (w < 1 || w > n)) throw std::invalid_argument("w must be in [1, n]");
  TrialResult res;
  Stopwatch phase;
  std::mt19937_64 rng(seed);
  if (mode == Mode::Restricted) {
    std::uniform_int_distribution<int> weight(1, w);
    res.period = random_period_with_weight(n, weight(rng), rng);
  } else {
    std::uniform_int_distribution<std::uint64_t> any(1, low_mask(n));
    res.period = BitVec(n, any(rng));
  }
  const AffineOracle oracle = AffineOracle::random(res.period, rng);
  const BinomPrefixTable table(mode == Mode::Restricted ? n : 0);
  res.timing.setup = phase.seconds();

  phase.restart();
  res.found = mode == Mode::Restricted ? solve_simon_restricted(n, w, oracle, table, threads)
                                       : solve_simon_general(n, oracle, threads);
  res.timing.compute = phase.seconds();

  phase.restart();
  res.queries = oracle.query_count();
  res.correct = res.found == res.period;
  res.timing.collect = phase.seconds();
  res.timing.total = total.seconds();
  return res;
}

}  // namespace rtbench::simon
