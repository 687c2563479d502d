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


// Synthetic datasets, the small hand-built fixture, evaluation metrics and
// the neighbor-exploration benchmark.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpgm/baseline.hpp"
#include "dpgm/canonical.hpp"
#include "dpgm/explore.hpp"
#include "dpgm/graph.hpp"
#include "dpgm/io.hpp"
#include "dpgm/isomorphism.hpp"
#include "dpgm/sampler.hpp"

namespace dpgm {

// Click-stream style trees: one random master tree, and every data graph is
// a connected piece of it. The piece's top vertex is found by walking down
// from the master root and stopping at each level with probability
// stop_prob, so vertices near the root recur in many graphs. The piece then
// grows by adding random tree neighbors of vertices already taken, up to
// 2 + Binomial(2 * (avg_vertices - 2), 1/2) vertices.
struct ClickParams {
  std::size_t n_graphs = 20000;
  std::size_t master_nodes = 10000;
  std::size_t depth = 10;
  std::size_t fanout = 6;
  std::size_t avg_vertices = 4;
  std::size_t alphabet = 5;
  double stop_prob = 0.35;
  std::uint64_t seed = 0;
};

inline Label numbered_label(std::size_t i) { return Label::of("L" + std::to_string(i)); }

inline GraphDataset gen_click(const ClickParams& p) {
  if (p.n_graphs == 0 || p.master_nodes < 2 || p.depth < 1 || p.fanout < 1 || p.alphabet < 1 ||
      p.avg_vertices < 2) {
    throw std::invalid_argument("click generator parameters must be positive");
  }
  if (!(p.stop_prob > 0 && p.stop_prob <= 1)) throw std::invalid_argument("stop_prob must lie in (0, 1]");
  std::mt19937_64 rng = make_stream(p.seed, 0);

  // Random attachment under the depth and fanout limits.
  std::vector<std::vector<std::size_t>> kids(1);
  std::vector<std::size_t> level(1, 0);
  std::vector<std::size_t> open{0};
  while (kids.size() < p.master_nodes && !open.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    const std::size_t slot = pick(rng);
    const std::size_t parent = open[slot];
    const std::size_t child = kids.size();
    kids.emplace_back();
    level.push_back(level[parent] + 1);
    kids[parent].push_back(child);
    if (level[child] < p.depth) open.push_back(child);
    if (kids[parent].size() >= p.fanout) {
      open[slot] = open.back();
      open.pop_back();
    }
  }

  // Renumber breadth-first so labels follow tree position.
  std::vector<std::size_t> bfs_id(kids.size());
  {
    std::vector<std::size_t> queue{0};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      bfs_id[queue[h]] = h;
      for (std::size_t c : kids[queue[h]]) queue.push_back(c);
    }
  }
  std::vector<Label> labels(kids.size());
  for (std::size_t v = 0; v < kids.size(); ++v) labels[v] = numbered_label(bfs_id[v] % p.alphabet);

  std::vector<std::size_t> up(kids.size(), 0);
  for (std::size_t v = 0; v < kids.size(); ++v) {
    for (std::size_t c : kids[v]) up[c] = v;
  }

  std::bernoulli_distribution stop(p.stop_prob);
  std::binomial_distribution<std::size_t> extra(2 * (p.avg_vertices - 2), 0.5);
  std::vector<LabeledGraph> graphs;
  graphs.reserve(p.n_graphs);
  for (std::size_t g = 0; g < p.n_graphs; ++g) {
    std::size_t top = 0;
    while (!kids[top].empty() && !stop(rng)) {
      std::uniform_int_distribution<std::size_t> pick(0, kids[top].size() - 1);
      top = kids[top][pick(rng)];
    }
    const std::size_t want = 2 + extra(rng);
    LabeledGraph out;
    std::vector<std::size_t> taken{top};
    // (master node, vertex in `out` it hangs from)
    std::vector<std::pair<std::size_t, VertexId>> frontier;
    auto expose = [&](std::size_t node, VertexId at) {
      for (std::size_t c : kids[node]) frontier.emplace_back(c, at);
      if (node != 0) frontier.emplace_back(up[node], at);
    };
    out.add_vertex(labels[top]);
    expose(top, 0);
    while (out.vertex_count() < want && !frontier.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
      const std::size_t at = pick(rng);
      const auto [node, parent] = frontier[at];
      frontier[at] = frontier.back();
      frontier.pop_back();
      if (std::find(taken.begin(), taken.end(), node) != taken.end()) continue;
      taken.push_back(node);
      const VertexId v = out.add_vertex(labels[node]);
      out.add_edge(parent, v);
      expose(node, v);
    }
    graphs.push_back(std::move(out));
  }
  return GraphDataset(std::move(graphs));
}

// Dense graphs: n in {avg-1, avg, avg+1} vertices, round(n * avg_edges /
// avg_vertices) edges, a random spanning tree plus uniformly chosen extra
// edges, labels uniform over the alphabet.
struct DenseParams {
  std::size_t n_graphs = 200;
  std::size_t avg_vertices = 10;
  std::size_t avg_edges = 35;
  std::size_t alphabet = 4;
  std::uint64_t seed = 0;
};

inline GraphDataset gen_dense(const DenseParams& p) {
  if (p.avg_vertices < 3 || p.alphabet < 1) throw std::invalid_argument("dense generator parameters out of range");
  const double ratio = static_cast<double>(p.avg_edges) / static_cast<double>(p.avg_vertices);
  for (std::size_t n = p.avg_vertices - 1; n <= p.avg_vertices + 1; ++n) {
    const auto m = static_cast<std::size_t>(std::lround(ratio * static_cast<double>(n)));
    if (m > n * (n - 1) / 2) {
      throw std::invalid_argument("edge target " + std::to_string(m) + " exceeds the simple-graph maximum for " +
                                  std::to_string(n) + " vertices");
    }
    if (m + 1 < n) throw std::invalid_argument("edge target too small for a connected graph");
  }
  std::mt19937_64 rng = make_stream(p.seed, 0);
  std::uniform_int_distribution<std::size_t> size_pick(p.avg_vertices - 1, p.avg_vertices + 1);
  std::uniform_int_distribution<std::size_t> label_pick(0, p.alphabet - 1);
  std::vector<LabeledGraph> graphs;
  graphs.reserve(p.n_graphs);
  for (std::size_t g = 0; g < p.n_graphs; ++g) {
    const std::size_t n = size_pick(rng);
    const auto m = static_cast<std::size_t>(std::lround(ratio * static_cast<double>(n)));
    LabeledGraph out;
    for (std::size_t v = 0; v < n; ++v) out.add_vertex(numbered_label(label_pick(rng)));
    for (VertexId v = 1; v < n; ++v) {
      std::uniform_int_distribution<VertexId> parent(0, v - 1);
      out.add_edge(parent(rng), v);
    }
    std::vector<Edge> missing;
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) {
        if (!out.has_edge(u, v)) missing.push_back({u, v});
      }
    }
    std::shuffle(missing.begin(), missing.end(), rng);
    for (std::size_t i = 0; out.edge_count() < m; ++i) out.add_edge(missing[i].u, missing[i].v);
    graphs.push_back(std::move(out));
  }
  return GraphDataset(std::move(graphs));
}

// Three graphs over {A, C, D}: edge A-D occurs in all three and the path
// A-A-D in two.
inline constexpr std::string_view kFixtureFig1 = R"(t # 0
v 0 A
v 1 A
v 2 C
v 3 D
e 0 1
e 1 2
e 0 2
e 1 3
t # 1
v 0 A
v 1 A
v 2 D
v 3 C
e 0 1
e 1 2
e 0 3
t # 2
v 0 A
v 1 D
v 2 C
e 0 1
e 1 2
)";

inline GraphDataset fixture_fig1() { return parse_dataset(kFixtureFig1); }

struct PatternEval {
  std::string code;
  std::size_t true_support = 0;
  bool in_truth = false;
};

struct EvalReport {
  double precision = 0;
  double rse = 0;
  double support_accuracy = 0;
  std::vector<PatternEval> per_pattern;
};

// Precision counts outputs whose true support reaches f, so ties at the
// threshold are not penalized; RSE = (S_true - S_out) / (k f).
inline EvalReport evaluate(const std::vector<PatternSupport>& output, const MiningResult& truth,
                           std::size_t f, std::size_t k) {
  if (output.size() != k) {
    throw std::invalid_argument("output has " + std::to_string(output.size()) + " patterns, expected " +
                                std::to_string(k));
  }
  if (truth.patterns.size() != k) throw std::invalid_argument("truth does not hold k patterns");
  if (k == 0 || f == 0) throw std::invalid_argument("k and f must be positive");
  std::set<std::string, std::less<>> truth_codes;
  double s_true = 0;
  for (const auto& t : truth.patterns) {
    truth_codes.insert(t.pattern.code());
    s_true += static_cast<double>(t.support);
  }
  EvalReport r;
  double s_out = 0;
  std::size_t hits = 0;
  for (const auto& o : output) {
    s_out += static_cast<double>(o.support);
    if (o.support >= f) ++hits;
    r.per_pattern.push_back({o.pattern.code(), o.support, truth_codes.count(o.pattern.code()) != 0});
  }
  const double kd = static_cast<double>(k);
  r.precision = static_cast<double>(hits) / kd;
  r.rse = (s_true - s_out) / (kd * static_cast<double>(f));
  r.support_accuracy = 1.0 - r.rse;
  return r;
}

inline double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("distributions differ in dimension");
  double sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::fabs(p[i] - q[i]);
  return sum / 2.0;
}

struct BenchRow {
  std::size_t step = 0;
  ExploreMethod method = ExploreMethod::een;
  std::uint64_t iso_calls = 0;
  std::uint64_t micros = 0;
};

struct BenchParams {
  std::size_t f = 1;
  std::size_t n_steps = 50;
  std::uint64_t seed = 0;
  RuleSet rules;
  PrivacyBudget budget;
  ProposalParams proposal;
  std::vector<ExploreMethod> methods{ExploreMethod::naive, ExploreMethod::basic, ExploreMethod::een};
};

class PartitionMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// One partition of x with the given method, including the support of x
// that every walk step needs; returns the matcher invocations spent.
inline std::uint64_t explore_once(ExploreMethod m, const Pattern& x, const GraphDataset& d, const RuleSet& rules,
                                  std::size_t f, const ExclusionSet& excl, NeighborPartition& out) {
  const std::uint64_t before = iso_calls();
  const ExploreContext ctx{d, rules, f, excl, std::nullopt};
  SupportOptions so;
  so.prefilter = m == ExploreMethod::een;
  const SupportRecord bx = support(x, d, so);
  switch (m) {
    case ExploreMethod::naive: out = naive_explore(x, ctx); break;
    case ExploreMethod::basic: out = basic_explore(x, bx, ctx); break;
    case ExploreMethod::een: out = een_explore(x, bx, ctx); break;
  }
  return iso_calls() - before;
}

// Walks with the sampler and, at every visited state, explores it once per
// method with no caching. Partitions must agree exactly.
inline std::vector<BenchRow> bench_neighbors(const GraphDataset& d, const BenchParams& p) {
  SamplerConfig cfg;
  cfg.f = p.f;
  cfg.budget = p.budget;
  cfg.proposal = p.proposal;
  cfg.rules = p.rules;
  cfg.seed = p.seed;
  cfg.method = ExploreMethod::een;
  Sampler walker(d, cfg);
  const RuleSet walk_rules = p.rules.walk_rules();
  const ExclusionSet excl;
  WalkState s = walker.start(initial_pattern(walk_rules, walker.rng()), excl);

  std::vector<BenchRow> rows;
  for (std::size_t step = 0; step < p.n_steps; ++step) {
    std::optional<NeighborPartition> reference;
    for (ExploreMethod m : p.methods) {
      NeighborPartition part;
      const auto t0 = std::chrono::steady_clock::now();
      const std::uint64_t calls = explore_once(m, s.current, d, walk_rules, p.f, excl, part);
      const auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);
      rows.push_back({step, m, calls, static_cast<std::uint64_t>(us.count())});
      if (!reference) {
        reference = std::move(part);
      } else if (!(part == *reference)) {
        throw PartitionMismatch("exploration methods disagree at step " + std::to_string(step) + " on " +
                                s.current.code());
      }
    }
    if (s.partition->empty()) break;
    walker.step(s, excl);
  }
  return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "step,method,iso_calls,micros\n";
  for (const BenchRow& r : rows) {
    out << r.step << ',' << to_string(r.method) << ',' << r.iso_calls << ',' << r.micros << '\n';
  }
}

}  // namespace dpgm
