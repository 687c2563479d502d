// Copyright 2026 The dpgm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "dpgm/baseline.hpp"
#include "dpgm/harness.hpp"
#include "dpgm/io.hpp"
#include "oracles.hpp"

namespace dpgm {
namespace {

TEST(Click, GraphsAreTrees) {
  const GraphDataset d = gen_click({.n_graphs = 2000, .seed = 3});
  ASSERT_EQ(d.size(), 2000u);
  for (const LabeledGraph& g : d.graphs()) {
    EXPECT_GE(g.vertex_count(), 2u);
    EXPECT_EQ(g.edge_count() + 1, g.vertex_count());
    EXPECT_TRUE(g.is_connected());
  }
}

TEST(Click, MeanSizeNearFour) {
  const GraphDataset d = gen_click({.n_graphs = 20000, .seed = 1});
  double v = 0;
  for (const LabeledGraph& g : d.graphs()) v += g.vertex_count();
  v /= d.size();
  EXPECT_GE(v, 3.5);
  EXPECT_LE(v, 4.5);
}

TEST(Click, ReproducibleAndPrefixStable) {
  const std::string a = dataset_to_text(gen_click({.n_graphs = 500, .seed = 9}));
  EXPECT_EQ(a, dataset_to_text(gen_click({.n_graphs = 500, .seed = 9})));
  EXPECT_NE(a, dataset_to_text(gen_click({.n_graphs = 500, .seed = 10})));
  const GraphDataset big = gen_click({.n_graphs = 1000, .seed = 9});
  EXPECT_EQ(a, dataset_to_text(big.prefix(500)));
}

TEST(Click, LabelsComeFromTheAlphabet) {
  const GraphDataset d = gen_click({.n_graphs = 300, .alphabet = 3, .seed = 2});
  for (Label l : d.labels()) {
    EXPECT_TRUE(l == numbered_label(0) || l == numbered_label(1) || l == numbered_label(2));
  }
  EXPECT_THROW(gen_click({.n_graphs = 0}), std::invalid_argument);
  EXPECT_THROW(gen_click({.stop_prob = 0.0}), std::invalid_argument);
}

TEST(Dense, MeanDegreeNearSeven) {
  const GraphDataset d = gen_dense({.seed = 4});
  double deg = 0;
  for (const LabeledGraph& g : d.graphs()) {
    deg += 2.0 * g.edge_count() / g.vertex_count();
    EXPECT_TRUE(g.is_connected());
    // Simple graph: the edge list has no duplicates or loops.
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const Edge& e : g.edges()) {
      EXPECT_NE(e.u, e.v);
      EXPECT_TRUE(seen.insert({e.u, e.v}).second);
    }
  }
  deg /= d.size();
  EXPECT_GE(deg, 6.3);
  EXPECT_LE(deg, 7.7);
}

TEST(Dense, ReproducibleAndFeasibility) {
  EXPECT_EQ(dataset_to_text(gen_dense({.n_graphs = 40, .seed = 4})),
            dataset_to_text(gen_dense({.n_graphs = 40, .seed = 4})));
  EXPECT_THROW(gen_dense({.avg_vertices = 5, .avg_edges = 30}), std::invalid_argument);
  EXPECT_THROW(gen_dense({.avg_vertices = 10, .avg_edges = 3}), std::invalid_argument);
}

TEST(Fixture, SupportsOfTheWorkedExample) {
  const GraphDataset d = fixture_fig1();
  EXPECT_EQ(d.size(), 3u);
  const Pattern ad = Pattern::single_edge(Label::of("A"), Label::of("D"));
  LabeledGraph aad;
  aad.add_vertex(Label::of("A"));
  aad.add_vertex(Label::of("A"));
  aad.add_vertex(Label::of("D"));
  aad.add_edge(0, 1);
  aad.add_edge(1, 2);
  EXPECT_EQ(oracle::support(ad.graph(), d), 3u);
  EXPECT_EQ(oracle::support(aad, d), 2u);
  EXPECT_EQ(support(ad, d).count, 3u);
  EXPECT_EQ(d.graphs_with_edge(Label::of("A"), Label::of("D")).count(), 3u);
}

MiningResult make_truth(std::vector<std::pair<Pattern, std::size_t>> v) {
  MiningResult r;
  for (auto& [p, s] : v) r.patterns.push_back({p, s});
  r.threshold_f = r.patterns.back().support;
  return r;
}

TEST(Evaluate, FixedPoint) {
  const GraphDataset d = fixture_fig1();
  const MiningResult truth = mine_exact_topk(d, 4, RuleSet{2, 4, 6, d.labels()});
  const EvalReport r = evaluate(truth.patterns, truth, truth.threshold_f, 4);
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.rse, 0.0);
  EXPECT_EQ(r.support_accuracy, 1.0);
  for (const auto& p : r.per_pattern) EXPECT_TRUE(p.in_truth);
}

TEST(Evaluate, FormulaCases) {
  const Label a = Label::of("A"), b = Label::of("B"), c = Label::of("C");
  const MiningResult truth = make_truth({{Pattern::single_edge(a, a), 10}, {Pattern::single_edge(a, b), 6}});
  // All output supports equal f: RSE = (S_true - k f) / (k f).
  std::vector<PatternSupport> out{{Pattern::single_edge(b, b), 6}, {Pattern::single_edge(a, c), 6}};
  EvalReport r = evaluate(out, truth, 6, 2);
  EXPECT_DOUBLE_EQ(r.rse, (16.0 - 12.0) / 12.0);
  EXPECT_DOUBLE_EQ(r.precision, 1.0);  // ties at f count
  EXPECT_FALSE(r.per_pattern[0].in_truth);
  out[1].support = 2;
  r = evaluate(out, truth, 6, 2);
  EXPECT_DOUBLE_EQ(r.precision, 0.5);
  EXPECT_DOUBLE_EQ(r.support_accuracy, 1.0 - r.rse);
  EXPECT_THROW(evaluate({out[0]}, truth, 6, 2), std::invalid_argument);
}

TEST(TvDistance, Cases) {
  const std::vector<double> p{0.6, 0.4}, q{0.5, 0.5}, e1{1, 0}, e2{0, 1};
  EXPECT_EQ(tv_distance(p, p), 0.0);
  EXPECT_DOUBLE_EQ(tv_distance(e1, e2), 1.0);
  EXPECT_NEAR(tv_distance(p, q), 0.1, 1e-15);
  EXPECT_THROW(tv_distance(p, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(TvDistance, IsAMetric) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 1);
  auto draw = [&] {
    std::vector<double> v(6);
    double s = 0;
    for (double& x : v) s += (x = u(rng));
    for (double& x : v) x /= s;
    return v;
  };
  for (int i = 0; i < 100; ++i) {
    const auto a = draw(), b = draw(), c = draw();
    EXPECT_DOUBLE_EQ(tv_distance(a, b), tv_distance(b, a));
    EXPECT_LE(tv_distance(a, c), tv_distance(a, b) + tv_distance(b, c) + 1e-15);
  }
}

TEST(Bench, OrderedCallsAndSameWalk) {
  const GraphDataset d = gen_dense({.n_graphs = 30, .avg_vertices = 8, .avg_edges = 20, .alphabet = 3, .seed = 2});
  BenchParams p;
  p.f = 8;
  p.n_steps = 25;
  p.seed = 5;
  p.rules = RuleSet{2, 5, 8, d.labels()};
  const auto rows = bench_neighbors(d, p);
  ASSERT_EQ(rows.size(), 3 * p.n_steps);
  for (std::size_t i = 0; i < rows.size(); i += 3) {
    EXPECT_EQ(rows[i].method, ExploreMethod::naive);
    EXPECT_LE(rows[i + 2].iso_calls, rows[i + 1].iso_calls);
    EXPECT_LE(rows[i + 1].iso_calls, rows[i].iso_calls);
  }
  // Method order does not change the walk.
  BenchParams q = p;
  q.methods = {ExploreMethod::een};
  const auto alone = bench_neighbors(d, q);
  ASSERT_EQ(alone.size(), p.n_steps);
  for (std::size_t s = 0; s < alone.size(); ++s) EXPECT_EQ(alone[s].iso_calls, rows[3 * s + 2].iso_calls);
  std::ostringstream csv;
  write_bench_csv(csv, rows);
  EXPECT_EQ(csv.str().rfind("step,method,iso_calls,micros\n0,naive,", 0), 0u);
}

}  // namespace
}  // namespace dpgm
