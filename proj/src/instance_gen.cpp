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

#include "rtbench/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace rtbench {

// TopologyGraph ---------------------------------------------------------------

TopologyGraph::TopologyGraph(int vertex_count) : n_(vertex_count) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
}

void TopologyGraph::add_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) throw std::out_of_range("edge endpoint out of range");
  if (a == b) throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
  edges_.insert(canonical_pair(a, b));
}

bool TopologyGraph::has_edge(int a, int b) const {
  return a != b && edges_.count(canonical_pair(a, b)) > 0;
}

std::vector<std::vector<int>> TopologyGraph::adjacency() const {
  std::vector<std::vector<int>> adj(n_);
  for (const auto& e : edges_) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

int TopologyGraph::max_degree() const {
  std::vector<int> deg(n_, 0);
  for (const auto& e : edges_) {
    ++deg[e[0]];
    ++deg[e[1]];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

bool TopologyGraph::is_connected() const {
  if (n_ == 0) return true;
  const auto adj = adjacency();
  std::vector<char> seen(n_, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        frontier.push(u);
      }
  }
  return reached == n_;
}

TopologyGraph TopologyGraph::induced_prefix(int count) const {
  if (count < 0 || count > n_) throw std::out_of_range("induced prefix larger than graph");
  TopologyGraph out(count);
  for (const auto& e : edges_)
    if (e[1] < count) out.add_edge(e[0], e[1]);
  return out;
}

// Heavy-hex -------------------------------------------------------------------

TopologyGraph heavy_hex_lattice(int rows, int row_length) {
  if (rows < 1 || row_length < 4 || row_length % 4 != 0)
    throw std::invalid_argument("heavy-hex needs rows >= 1 and row_length a positive multiple of 4");
  const int bridges = row_length / 4;
  const int total = rows * row_length + (rows - 1) * bridges;
  TopologyGraph g(total);
  const int block = row_length + bridges;
  auto row_start = [&](int r) { return r * block; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < row_length; ++c) g.add_edge(row_start(r) + c, row_start(r) + c + 1);
    if (r + 1 == rows) break;
    const int first_col = r % 2 == 0 ? 3 : 1;
    for (int b = 0; b < bridges; ++b) {
      const int bridge = row_start(r) + row_length + b;
      const int col = first_col + 4 * b;
      g.add_edge(row_start(r) + col, bridge);
      g.add_edge(bridge, row_start(r + 1) + col);
    }
  }
  return g;
}

TopologyGraph build_heavy_hex(int target_n) {
  if (target_n < 12 || target_n > kHeronQubits)
    throw std::invalid_argument("heavy-hex size must be in [12, 156], got " + std::to_string(target_n));
  return heavy_hex_lattice(8, 16).induced_prefix(target_n);
}

// Conflict graphs ---------------------------------------------------------------

namespace {

template <class Key>
TopologyGraph overlap_graph(const std::vector<Key>& items) {
  TopologyGraph g(static_cast<int>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      bool shared = false;
      for (int a : items[i])
        for (int b : items[j]) shared = shared || a == b;
      if (shared) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  return g;
}

}  // namespace

PairConflictGraph conflict_graph_2body(const TopologyGraph& c) {
  std::vector<PairKey> items(c.edges().begin(), c.edges().end());
  TopologyGraph g = overlap_graph(items);
  return {std::move(g), std::move(items)};
}

TripleConflictGraph conflict_graph_3body(const TopologyGraph& c) {
  const auto adj = c.adjacency();
  std::vector<TripleKey> items;
  std::set<TripleKey> seen;
  for (int v = 0; v < c.vertex_count(); ++v) {
    const auto& nb = adj[v];
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        const TripleKey t = canonical_triple(v, nb[a], nb[b]);
        if (seen.insert(t).second) items.push_back(t);
      }
  }
  TopologyGraph g = overlap_graph(items);
  return {std::move(g), std::move(items)};
}

std::vector<std::vector<int>> color_graph(const TopologyGraph& g) {
  const int n = g.vertex_count();
  const auto adj = g.adjacency();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return adj[a].size() > adj[b].size(); });

  std::vector<int> color(n, -1);
  int colors = 0;
  std::vector<char> used;
  for (int v : order) {
    used.assign(colors + 1, 0);
    for (int u : adj[v])
      if (color[u] >= 0) used[color[u]] = 1;
    int c = 0;
    while (used[c]) ++c;
    color[v] = c;
    colors = std::max(colors, c + 1);
  }

  std::vector<std::vector<int>> classes(colors);
  for (int v = 0; v < n; ++v) classes[color[v]].push_back(v);
  std::stable_sort(classes.begin(), classes.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return classes;
}

TopologyGraph apply_swap(const TopologyGraph& c, const std::vector<PairKey>& pairs) {
  std::vector<int> perm(c.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> touched(c.vertex_count(), 0);
  for (const auto& p : pairs) {
    for (int v : p) {
      if (v < 0 || v >= c.vertex_count()) throw std::out_of_range("swap endpoint out of range");
      if (touched[v]) throw std::invalid_argument("swap pairs overlap at vertex " + std::to_string(v));
      touched[v] = 1;
    }
    if (p[0] == p[1]) throw std::invalid_argument("swap pair with identical endpoints");
    perm[p[0]] = p[1];
    perm[p[1]] = p[0];
  }
  TopologyGraph out(c.vertex_count());
  for (const auto& e : c.edges()) out.add_edge(perm[e[0]], perm[e[1]]);
  return out;
}

// Couplings -------------------------------------------------------------------

std::string CouplingDistribution::name() const {
  return kind == Kind::Cauchy ? "cauchy" : "symmetrized_pareto";
}

double sample_coupling(const CouplingDistribution& dist, std::mt19937_64& rng) {
  switch (dist.kind) {
    case CouplingDistribution::Kind::Cauchy: {
      std::cauchy_distribution<double> cauchy(0.0, 1.0);
      return cauchy(rng);
    }
    case CouplingDistribution::Kind::SymmetrizedPareto: {
      if (!(dist.alpha > 0.0) || !(dist.x_min > 0.0))
        throw std::invalid_argument("Pareto needs alpha > 0 and x_min > 0");
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      const double u = 1.0 - unif(rng);  // (0, 1]
      const double magnitude = dist.x_min * std::pow(u, -1.0 / dist.alpha);
      std::bernoulli_distribution coin(0.5);
      return coin(rng) ? magnitude : -magnitude;
    }
  }
  throw std::invalid_argument("unknown coupling distribution");
}

// Generation ------------------------------------------------------------------

void GeneratorConfig::validate() const {
  if (s2q < 0 || s3q < 0 || n_swap < 0) throw std::invalid_argument("generator counts must be non-negative");
  if (n_swap >= 1 && s2q < 1) throw std::invalid_argument("SWAP rounds need at least one two-body set");
  if (target_n < 12 || target_n > kHeronQubits)
    throw std::invalid_argument("target_n must be in [12, 156]");
  if (distribution.kind == CouplingDistribution::Kind::SymmetrizedPareto &&
      (!(distribution.alpha > 0.0) || !(distribution.x_min > 0.0)))
    throw std::invalid_argument("Pareto needs alpha > 0 and x_min > 0");
}

GeneratorConfig instance_type_config(const std::string& type, int target_n, std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.target_n = target_n;
  cfg.seed = seed;
  cfg.s2q = 1;
  cfg.n_swap = 1;
  if (type == "cauchy4") {
    cfg.s3q = 4;
    cfg.distribution = CouplingDistribution::cauchy();
  } else if (type == "pareto6") {
    cfg.s3q = 6;
    cfg.distribution = CouplingDistribution::pareto();
  } else {
    throw std::invalid_argument("unknown instance type '" + type + "' (expected cauchy4 or pareto6)");
  }
  return cfg;
}

GeneratedInstance generate_hubo_detailed(const GeneratorConfig& config) {
  config.validate();
  GeneratedInstance out;
  TopologyGraph c = build_heavy_hex(config.target_n);

  for (int round = 0; round <= config.n_swap; ++round) {
    GenerationRound info;
    info.topology = c;
    const auto conflict2 = conflict_graph_2body(c);
    const auto conflict3 = conflict_graph_3body(c);
    const auto colors2 = color_graph(conflict2.graph);
    const auto colors3 = color_graph(conflict3.graph);
    info.pair_colors = static_cast<int>(colors2.size());
    info.triple_colors = static_cast<int>(colors3.size());
    if (config.s2q > info.pair_colors)
      throw std::invalid_argument("S2q=" + std::to_string(config.s2q) + " exceeds " +
                                  std::to_string(info.pair_colors) + " two-body color classes");
    if (config.s3q > info.triple_colors)
      throw std::invalid_argument("S3q=" + std::to_string(config.s3q) + " exceeds " +
                                  std::to_string(info.triple_colors) + " three-body color classes");

    for (int i = 0; i < config.s2q; ++i) {
      std::vector<PairKey> cls;
      for (int v : colors2[i]) cls.push_back(conflict2.interactions[v]);
      out.sets.g2.insert(cls.begin(), cls.end());
      info.pair_classes.push_back(std::move(cls));
    }
    for (int i = 0; i < config.s3q; ++i) {
      std::vector<TripleKey> cls;
      for (int v : colors3[i]) cls.push_back(conflict3.interactions[v]);
      out.sets.g3.insert(cls.begin(), cls.end());
      info.triple_classes.push_back(std::move(cls));
    }

    if (round < config.n_swap) {
      std::vector<PairKey> first;
      for (int v : colors2.front()) first.push_back(conflict2.interactions[v]);
      c = apply_swap(c, first);
    }
    out.rounds.push_back(std::move(info));
  }

  std::mt19937_64 rng(config.seed);
  HuboInstance inst(config.target_n);
  for (const auto& p : out.sets.g2) inst.add_pair(p[0], p[1], sample_coupling(config.distribution, rng));
  for (const auto& t : out.sets.g3)
    inst.add_triple(t[0], t[1], t[2], sample_coupling(config.distribution, rng));

  nlohmann::json dist = {{"kind", config.distribution.name()}};
  if (config.distribution.kind == CouplingDistribution::Kind::SymmetrizedPareto) {
    dist["alpha"] = config.distribution.alpha;
    dist["x_min"] = config.distribution.x_min;
  }
  inst.metadata = {{"generator", "heavy-hex"},
                   {"s2q", config.s2q},
                   {"s3q", config.s3q},
                   {"n_swap", config.n_swap},
                   {"target_n", config.target_n},
                   {"seed", config.seed},
                   {"distribution", dist}};
  out.instance = std::move(inst);
  return out;
}

HuboInstance generate_hubo(const GeneratorConfig& config) { return generate_hubo_detailed(config).instance; }

}  // namespace rtbench
