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

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "dpgm/label.hpp"

namespace dpgm {

using VertexId = std::uint32_t;

// Set of dataset graph ids (the gid / B sets).
using GidSet = boost::dynamic_bitset<std::uint64_t>;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Undirected edge with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  static Edge normalized(VertexId a, VertexId b) {
    return a < b ? Edge{a, b} : Edge{b, a};
  }
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected, vertex-labeled simple graph. Vertices are 0..V-1.
class LabeledGraph {
 public:
  LabeledGraph() = default;

  VertexId add_vertex(Label label) {
    labels_.push_back(label);
    adjacency_.emplace_back();
    return static_cast<VertexId>(labels_.size() - 1);
  }

  void add_edge(VertexId a, VertexId b) {
    if (a >= vertex_count() || b >= vertex_count()) {
      throw GraphError("edge references unknown vertex");
    }
    if (a == b) throw GraphError("self-loop");
    if (has_edge(a, b)) throw GraphError("multi-edge");
    insert_sorted(adjacency_[a], b);
    insert_sorted(adjacency_[b], a);
    edges_.push_back(Edge::normalized(a, b));
  }

  void remove_edge(VertexId a, VertexId b) {
    const Edge e = Edge::normalized(a, b);
    auto it = std::find(edges_.begin(), edges_.end(), e);
    if (it == edges_.end()) throw GraphError("no such edge");
    edges_.erase(it);
    erase_sorted(adjacency_[a], b);
    erase_sorted(adjacency_[b], a);
  }

  // Removes an isolated vertex; later vertices shift down by one.
  void remove_isolated_vertex(VertexId v) {
    if (v >= vertex_count() || !adjacency_[v].empty()) {
      throw GraphError("vertex is not isolated");
    }
    labels_.erase(labels_.begin() + v);
    adjacency_.erase(adjacency_.begin() + v);
    auto shift = [v](VertexId w) { return w > v ? w - 1 : w; };
    for (auto& nbrs : adjacency_) {
      for (auto& w : nbrs) w = shift(w);
    }
    for (auto& e : edges_) e = Edge{shift(e.u), shift(e.v)};
  }

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return labels_.empty(); }

  Label label(VertexId v) const { return labels_[v]; }
  std::span<const Label> labels() const { return labels_; }
  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
  std::size_t degree(VertexId v) const { return adjacency_[v].size(); }

  // Edges in insertion order.
  std::span<const Edge> edges() const { return edges_; }

  bool has_edge(VertexId a, VertexId b) const {
    const auto& shorter =
        adjacency_[a].size() <= adjacency_[b].size() ? adjacency_[a] : adjacency_[b];
    const VertexId other = (&shorter == &adjacency_[a]) ? b : a;
    return std::binary_search(shorter.begin(), shorter.end(), other);
  }

  bool is_connected() const {
    if (labels_.empty()) return true;
    std::vector<char> seen(vertex_count(), 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : adjacency_[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    return reached == vertex_count();
  }

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_;
  }

 private:
  static void insert_sorted(std::vector<VertexId>& v, VertexId x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
  }
  static void erase_sorted(std::vector<VertexId>& v, VertexId x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) v.erase(it);
  }

  std::vector<Label> labels_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<Edge> edges_;
};

// Ordered collection of data graphs with ids 0..n-1 and the per-label-pair
// edge index: graphs_with_edge(a, b) holds i iff graph i has an edge whose
// endpoint labels are {a, b}.
class GraphDataset {
 public:
  GraphDataset() = default;

  explicit GraphDataset(std::vector<LabeledGraph> graphs) : graphs_(std::move(graphs)) {
    build_index();
  }

  std::size_t size() const { return graphs_.size(); }
  bool empty() const { return graphs_.empty(); }
  const LabeledGraph& graph(std::size_t gid) const { return graphs_[gid]; }
  std::span<const LabeledGraph> graphs() const { return graphs_; }

  const GidSet& graphs_with_edge(Label a, Label b) const {
    auto it = edge_index_.find(key(a, b));
    return it == edge_index_.end() ? empty_ : it->second;
  }

  // Intersection of graphs_with_edge over the pattern's edges; a superset of
  // the graphs that can contain the pattern.
  GidSet candidate_graphs(const LabeledGraph& pattern) const {
    GidSet result(size());
    result.set();
    for (const Edge& e : pattern.edges()) {
      result &= graphs_with_edge(pattern.label(e.u), pattern.label(e.v));
      if (result.none()) break;
    }
    return result;
  }

  // Labels that occur in at least one graph, sorted by name.
  const std::vector<Label>& labels() const { return labels_; }

  // The first n graphs, ids preserved.
  GraphDataset prefix(std::size_t n) const {
    n = std::min(n, size());
    return GraphDataset(std::vector<LabeledGraph>(graphs_.begin(), graphs_.begin() + n));
  }

 private:
  using Key = std::pair<std::uint32_t, std::uint32_t>;
  static Key key(Label a, Label b) {
    return a.id() < b.id() ? Key{a.id(), b.id()} : Key{b.id(), a.id()};
  }

  void build_index() {
    empty_ = GidSet(size());
    std::vector<Label> seen;
    for (std::size_t gid = 0; gid < graphs_.size(); ++gid) {
      const LabeledGraph& g = graphs_[gid];
      seen.insert(seen.end(), g.labels().begin(), g.labels().end());
      for (const Edge& e : g.edges()) {
        auto [it, inserted] = edge_index_.try_emplace(key(g.label(e.u), g.label(e.v)));
        if (inserted) it->second.resize(size());
        it->second.set(gid);
      }
    }
    labels_ = sorted_by_name(std::move(seen));
  }

  std::vector<LabeledGraph> graphs_;
  std::map<Key, GidSet> edge_index_;
  std::vector<Label> labels_;
  GidSet empty_;
};

// Bounds on the pattern space. Walk states obey v_max/e_max; v_min only
// filters what is reported.
struct RuleSet {
  std::size_t v_min = 2;
  std::size_t v_max = 6;
  std::size_t e_max = 12;
  std::vector<Label> labels;

  void validate() const {
    if (labels.empty()) throw std::invalid_argument("rule set needs at least one label");
    if (v_max < 2) throw std::invalid_argument("v_max must be at least 2");
    if (e_max < 1) throw std::invalid_argument("e_max must be at least 1");
    if (v_min > v_max) throw std::invalid_argument("v_min exceeds v_max");
  }

  bool has_label(Label l) const {
    return std::find(labels.begin(), labels.end(), l) != labels.end();
  }

  bool admits_state(const LabeledGraph& g) const {
    if (g.edge_count() < 1 || g.vertex_count() > v_max || g.edge_count() > e_max) {
      return false;
    }
    return std::all_of(g.labels().begin(), g.labels().end(),
                       [this](Label l) { return has_label(l); });
  }

  bool admits_output(const LabeledGraph& g) const {
    return admits_state(g) && g.vertex_count() >= v_min;
  }

  // The same bounds without the output-only lower limit.
  RuleSet walk_rules() const {
    RuleSet r = *this;
    r.v_min = 2;
    return r;
  }
};

}  // namespace dpgm
