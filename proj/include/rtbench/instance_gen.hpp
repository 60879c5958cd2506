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
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rtbench/model.hpp"

namespace rtbench {

/// Simple undirected graph on vertices 0..vertex_count-1.
class TopologyGraph {
 public:
  explicit TopologyGraph(int vertex_count = 0);

  /// Throws on self-loops and out-of-range endpoints; parallel edges collapse.
  void add_edge(int a, int b);
  bool has_edge(int a, int b) const;

  int vertex_count() const { return n_; }
  const std::set<PairKey>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Sorted neighbor lists.
  std::vector<std::vector<int>> adjacency() const;
  int max_degree() const;
  bool is_connected() const;

  /// Induced subgraph on vertices [0, count).
  TopologyGraph induced_prefix(int count) const;

  friend bool operator==(const TopologyGraph&, const TopologyGraph&) = default;

 private:
  int n_ = 0;
  std::set<PairKey> edges_;
};

inline constexpr int kHeronQubits = 156;

/// Heavy-hex lattice with `rows` rows of `row_length` qubits, joined by
/// row_length/4 bridge qubits per gap. Bridges alternate between columns
/// 3,7,11,... and 1,5,9,... Vertices are numbered row-major with each gap's
/// bridges following the row above it. rows=8, row_length=16 gives the
/// 156-qubit Heron layout.
TopologyGraph heavy_hex_lattice(int rows, int row_length);

/// First target_n vertices of the 156-qubit layout. Valid for 12..156.
TopologyGraph build_heavy_hex(int target_n);

struct PairConflictGraph {
  TopologyGraph graph;
  std::vector<PairKey> interactions;  // vertex i of graph <-> interactions[i]
};

struct TripleConflictGraph {
  TopologyGraph graph;
  std::vector<TripleKey> interactions;
};

/// One vertex per edge; two vertices conflict when their edges share a qubit.
PairConflictGraph conflict_graph_2body(const TopologyGraph& c);

/// One vertex per triple {v, u, w} with u, w neighbors of v (three-qubit
/// paths and triangles, each triangle counted once).
TripleConflictGraph conflict_graph_3body(const TopologyGraph& c);

/// Greedy coloring, largest degree first (ties by vertex index). Classes are
/// returned by descending size, each sorted ascending.
std::vector<std::vector<int>> color_graph(const TopologyGraph& g);

/// Relabels a <-> b for every pair. Pairs must be vertex-disjoint.
TopologyGraph apply_swap(const TopologyGraph& c, const std::vector<PairKey>& pairs);

struct CouplingDistribution {
  enum class Kind { Cauchy, SymmetrizedPareto };
  Kind kind = Kind::Cauchy;
  double alpha = 1.0;
  double x_min = 1.0;

  static CouplingDistribution cauchy() { return {}; }
  static CouplingDistribution pareto(double alpha = 1.0, double x_min = 1.0) {
    return {Kind::SymmetrizedPareto, alpha, x_min};
  }
  std::string name() const;
};

/// Standard Cauchy, or Pareto(alpha, x_min) magnitude times a fair random sign.
double sample_coupling(const CouplingDistribution& dist, std::mt19937_64& rng);

struct GeneratorConfig {
  int s2q = 1;
  int s3q = 4;
  int n_swap = 1;
  CouplingDistribution distribution;
  int target_n = kHeronQubits;
  std::uint64_t seed = 0;

  void validate() const;
};

/// The two benchmark families: "cauchy4" (S2q=1, S3q=4, one SWAP, Cauchy)
/// and "pareto6" (S2q=1, S3q=6, one SWAP, symmetrized Pareto).
GeneratorConfig instance_type_config(const std::string& type, int target_n, std::uint64_t seed);

struct InteractionSets {
  std::set<PairKey> g2;
  std::set<TripleKey> g3;
};

struct GenerationRound {
  TopologyGraph topology;
  std::vector<std::vector<PairKey>> pair_classes;      // included classes only
  std::vector<std::vector<TripleKey>> triple_classes;  // included classes only
  int pair_colors = 0;
  int triple_colors = 0;
};

struct GeneratedInstance {
  HuboInstance instance;
  InteractionSets sets;
  std::vector<GenerationRound> rounds;
};

GeneratedInstance generate_hubo_detailed(const GeneratorConfig& config);
HuboInstance generate_hubo(const GeneratorConfig& config);

}  // namespace rtbench
