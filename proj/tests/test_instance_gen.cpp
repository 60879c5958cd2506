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

#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "rtbench/instance_gen.hpp"

using namespace rtbench;

namespace {

TopologyGraph path(int n) {
  TopologyGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

TopologyGraph triangle() {
  TopologyGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  return g;
}

bool independent(const TopologyGraph& g, const std::vector<int>& cls) {
  for (std::size_t a = 0; a < cls.size(); ++a)
    for (std::size_t b = a + 1; b < cls.size(); ++b)
      if (g.has_edge(cls[a], cls[b])) return false;
  return true;
}

template <class Key>
bool vertex_disjoint(const std::vector<Key>& cls) {
  std::set<int> seen;
  for (const auto& key : cls)
    for (int v : key)
      if (!seen.insert(v).second) return false;
  return true;
}

// A triple is valid when one of its members is adjacent to the other two.
bool is_path_or_triangle(const TopologyGraph& g, const TripleKey& t) {
  for (int c = 0; c < 3; ++c) {
    const int v = t[c], u = t[(c + 1) % 3], w = t[(c + 2) % 3];
    if (g.has_edge(v, u) && g.has_edge(v, w)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("heron heavy-hex layout") {
  const TopologyGraph g = build_heavy_hex(156);
  CHECK(g.vertex_count() == 156);
  CHECK(g.max_degree() == 3);
  CHECK(g.is_connected());
  CHECK(g.edge_count() == 176);
  const auto adj = g.adjacency();
  int degree2 = 0, degree3 = 0;
  for (const auto& nb : adj) {
    degree2 += nb.size() == 2;
    degree3 += nb.size() == 3;
  }
  // 28 bridges with two ends each; the 8 ends on a row's last qubit stay at degree 2.
  CHECK(degree3 == 2 * 28 - 8);
  CHECK(degree2 + degree3 <= 156);
  // Heavy-hex has no triangles.
  for (const auto& e : g.edges())
    for (int w : adj[e[0]]) CHECK_FALSE(g.has_edge(e[1], w));
}

TEST_CASE("reduced sizes are induced prefixes") {
  const TopologyGraph full = build_heavy_hex(156);
  const TopologyGraph g = build_heavy_hex(80);
  CHECK(g.vertex_count() == 80);
  for (const auto& e : g.edges()) CHECK(full.has_edge(e[0], e[1]));
  for (const auto& e : full.edges())
    if (e[1] < 80) CHECK(g.has_edge(e[0], e[1]));
  CHECK(g == full.induced_prefix(80));
  CHECK_THROWS_AS(build_heavy_hex(157), std::invalid_argument);
  CHECK_THROWS_AS(build_heavy_hex(11), std::invalid_argument);
  CHECK_NOTHROW(build_heavy_hex(12));
}

TEST_CASE("topology graphs reject loops") {
  TopologyGraph g(3);
  CHECK_THROWS(g.add_edge(1, 1));
  CHECK_THROWS(g.add_edge(0, 3));
  g.add_edge(2, 0);
  g.add_edge(0, 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.has_edge(0, 2));
  CHECK_FALSE(g.is_connected());
}

TEST_CASE("two-body conflict graph examples") {
  const auto p = conflict_graph_2body(path(3));
  CHECK(p.graph.vertex_count() == 2);
  CHECK(p.graph.edge_count() == 1);
  const auto t = conflict_graph_2body(triangle());
  CHECK(t.graph.vertex_count() == 3);
  CHECK(t.graph.edge_count() == 3);
  const auto e = conflict_graph_2body(TopologyGraph(4));
  CHECK(e.graph.vertex_count() == 0);
  CHECK(e.interactions.empty());
}

TEST_CASE("three-body conflict graph examples") {
  const auto p = conflict_graph_3body(path(4));
  REQUIRE(p.interactions.size() == 2);
  std::set<TripleKey> got(p.interactions.begin(), p.interactions.end());
  CHECK(got == std::set<TripleKey>{{0, 1, 2}, {1, 2, 3}});
  CHECK(p.graph.edge_count() == 1);

  TopologyGraph star(4);
  for (int leaf = 1; leaf <= 3; ++leaf) star.add_edge(0, leaf);
  const auto s = conflict_graph_3body(star);
  CHECK(s.interactions.size() == 3);
  CHECK(s.graph.edge_count() == 3);

  CHECK(conflict_graph_3body(path(2)).interactions.empty());
  // A triangle is listed once even though all three centers see it.
  CHECK(conflict_graph_3body(triangle()).interactions.size() == 1);
}

TEST_CASE("conflict edges follow shared qubits") {
  const TopologyGraph c = build_heavy_hex(40);
  const auto p2 = conflict_graph_2body(c);
  const auto p3 = conflict_graph_3body(c);
  auto shares = [](const auto& a, const auto& b) {
    for (int x : a)
      for (int y : b)
        if (x == y) return true;
    return false;
  };
  for (std::size_t a = 0; a < p2.interactions.size(); ++a)
    for (std::size_t b = a + 1; b < p2.interactions.size(); ++b)
      CHECK(p2.graph.has_edge(a, b) == shares(p2.interactions[a], p2.interactions[b]));
  for (std::size_t a = 0; a < p3.interactions.size(); ++a)
    for (std::size_t b = a + 1; b < p3.interactions.size(); ++b)
      CHECK(p3.graph.has_edge(a, b) == shares(p3.interactions[a], p3.interactions[b]));
  CHECK(p2.interactions.size() == c.edge_count());
}

TEST_CASE("coloring examples") {
  const auto t = color_graph(triangle());
  CHECK(t.size() == 3);
  for (const auto& cls : t) CHECK(cls.size() == 1);
  CHECK(color_graph(TopologyGraph(5)).size() == 1);
  CHECK(color_graph(TopologyGraph(5)).front().size() == 5);
  CHECK(color_graph(path(4)).size() == 2);
}

TEST_CASE("coloring is proper, complete and ordered on conflict graphs") {
  for (int n : {40, 156}) {
    const auto g = conflict_graph_3body(build_heavy_hex(n)).graph;
    const auto classes = color_graph(g);
    std::vector<int> all;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      CHECK(independent(g, classes[k]));
      CHECK(std::is_sorted(classes[k].begin(), classes[k].end()));
      if (k > 0) CHECK(classes[k - 1].size() >= classes[k].size());
      all.insert(all.end(), classes[k].begin(), classes[k].end());
    }
    std::sort(all.begin(), all.end());
    CHECK(all.size() == static_cast<std::size_t>(g.vertex_count()));
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  }
}

TEST_CASE("swap examples") {
  const TopologyGraph g = path(3);
  const TopologyGraph s = apply_swap(g, {{0, 1}});
  CHECK(s.has_edge(0, 1));
  CHECK(s.has_edge(0, 2));
  CHECK(s.edge_count() == 2);
  CHECK(apply_swap(g, {}) == g);
  CHECK(apply_swap(s, {{0, 1}}) == g);
  CHECK_THROWS_AS(apply_swap(g, {{0, 1}, {1, 2}}), std::invalid_argument);
}

TEST_CASE("coupling distributions") {
  std::mt19937_64 rng(2024);
  std::vector<double> draws(100000);
  for (auto& x : draws) x = sample_coupling(CouplingDistribution::cauchy(), rng);
  std::nth_element(draws.begin(), draws.begin() + draws.size() / 2, draws.end());
  CHECK(std::abs(draws[draws.size() / 2]) <= 0.02);

  const auto pareto = CouplingDistribution::pareto();
  int positive = 0;
  const int n = 100000;
  bool support = true;
  for (int k = 0; k < n; ++k) {
    const double x = sample_coupling(pareto, rng);
    support = support && std::abs(x) >= 1.0;
    positive += x > 0;
  }
  CHECK(support);
  const double sigma = std::sqrt(0.25 / n);
  CHECK(std::abs(positive / static_cast<double>(n) - 0.5) <= 4 * sigma);

  const auto scaled = CouplingDistribution::pareto(2.5, 3.0);
  for (int k = 0; k < 1000; ++k) CHECK(std::abs(sample_coupling(scaled, rng)) >= 3.0);
  CHECK_THROWS(sample_coupling(CouplingDistribution::pareto(0.0, 1.0), rng));
  CHECK_THROWS(sample_coupling(CouplingDistribution::pareto(1.0, -1.0), rng));
}

TEST_CASE("generator structural invariants") {
  for (const char* type : {"cauchy4", "pareto6"}) {
    for (int n : {80, 100, 130, 156}) {
      CAPTURE(type);
      CAPTURE(n);
      const GeneratorConfig config = instance_type_config(type, n, 99);
      const GeneratedInstance g = generate_hubo_detailed(config);
      CHECK(g.instance.size() == n);
      CHECK(g.rounds.size() == static_cast<std::size_t>(config.n_swap + 1));
      std::set<PairKey> g2;
      std::set<TripleKey> g3;
      for (const auto& round : g.rounds) {
        CHECK(round.pair_classes.size() == static_cast<std::size_t>(config.s2q));
        CHECK(round.triple_classes.size() == static_cast<std::size_t>(config.s3q));
        CHECK(round.triple_colors >= config.s3q);
        for (const auto& cls : round.pair_classes) {
          CHECK(vertex_disjoint(cls));
          for (const auto& p : cls) CHECK(round.topology.has_edge(p[0], p[1]));
          g2.insert(cls.begin(), cls.end());
        }
        for (const auto& cls : round.triple_classes) {
          CHECK(vertex_disjoint(cls));
          for (const auto& t : cls) CHECK(is_path_or_triangle(round.topology, t));
          g3.insert(cls.begin(), cls.end());
        }
      }
      CHECK(g2 == g.sets.g2);
      CHECK(g3 == g.sets.g3);
      CHECK(g.instance.pair_terms().size() == g2.size());
      CHECK(g.instance.triple_terms().size() == g3.size());
      for (const auto& [k, v] : g.instance.triple_terms()) {
        CHECK(k[0] < k[1]);
        CHECK(k[1] < k[2]);
        CHECK(k[2] < n);
        CHECK(std::isfinite(v));
      }
      if (std::string(type) == "pareto6")
        for (const auto& [k, v] : g.instance.triple_terms()) CHECK(std::abs(v) >= 1.0);
      CHECK(g.instance.metadata["s3q"] == config.s3q);
    }
  }
}

TEST_CASE("swap round uses the first two-body class") {
  const GeneratedInstance g = generate_hubo_detailed(instance_type_config("cauchy4", 100, 5));
  REQUIRE(g.rounds.size() == 2);
  CHECK(g.rounds[1].topology == apply_swap(g.rounds[0].topology, g.rounds[0].pair_classes[0]));
}

TEST_CASE("generation is deterministic under a fixed seed") {
  const auto a = generate_hubo(instance_type_config("pareto6", 130, 17));
  const auto b = generate_hubo(instance_type_config("pareto6", 130, 17));
  const auto c = generate_hubo(instance_type_config("pareto6", 130, 18));
  CHECK(a.pair_terms() == b.pair_terms());
  CHECK(a.triple_terms() == b.triple_terms());
  CHECK(a.triple_terms() != c.triple_terms());
}

TEST_CASE("generator config validation") {
  GeneratorConfig c = instance_type_config("cauchy4", 156, 1);
  c.s3q = 1000;
  CHECK_THROWS(generate_hubo(c));
  c = instance_type_config("cauchy4", 156, 1);
  c.s2q = 0;
  CHECK_THROWS(c.validate());
  CHECK_THROWS(instance_type_config("other", 156, 1));
  CHECK_THROWS(generate_hubo(instance_type_config("cauchy4", 200, 1)));
}
