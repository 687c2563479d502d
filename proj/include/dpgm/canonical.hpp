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

// Minimum DFS code (gSpan ordering, no edge labels) and the Pattern type.
//
// A DFS code lists the edges of a connected graph in the order a depth-first
// traversal discovers them, as (from, to) pairs of discovery indices plus the
// labels of both ends. Backward edges of the rightmost vertex precede any
// forward edge; backward edges are ordered by target index; forward edges
// prefer the deepest origin on the rightmost path, then the smaller label.
// The minimum over all traversals identifies the isomorphism class.

#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpgm/graph.hpp"

namespace dpgm {

struct CanonicalForm {
  std::string code;
  // order[i] is the vertex that received discovery index i.
  std::vector<VertexId> order;
  // Code entries as (from, to) discovery indices, in code order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
};

namespace detail {

struct DfsState {
  std::vector<int> index_of;
  std::vector<VertexId> vertex_of;
  std::vector<std::uint32_t> rmpath;
  std::vector<char> used;  // per edge id
  std::uint64_t visited = 0;
};

struct DfsCandidate {
  bool backward = false;
  std::uint32_t from = 0;
  std::uint32_t to = 0;       // backward target index
  std::string_view label;     // forward: label of the new vertex
  std::size_t rm_pos = 0;     // forward: position of origin on rmpath
  bool valid = false;
};

// true if a is a strictly smaller next entry than b
inline bool candidate_less(const DfsCandidate& a, const DfsCandidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.backward != b.backward) return a.backward;
  if (a.backward) return a.to < b.to;
  if (a.from != b.from) return a.from > b.from;
  return a.label < b.label;
}

inline bool candidate_equal(const DfsCandidate& a, const DfsCandidate& b) {
  return !candidate_less(a, b) && !candidate_less(b, a);
}

}  // namespace detail

// Throws GraphError for disconnected or edgeless input, or more than 64
// vertices.
inline CanonicalForm canonical_form(const LabeledGraph& g) {
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  if (m == 0) throw GraphError("canonical code needs at least one edge");
  if (n > 64) throw GraphError("canonical code supports at most 64 vertices");
  if (!g.is_connected()) throw GraphError("canonical code needs a connected graph");

  std::vector<std::string_view> name(n);
  for (VertexId v = 0; v < n; ++v) name[v] = g.label(v).name();
  std::vector<int> edge_id(n * n, -1);
  for (std::size_t i = 0; i < m; ++i) {
    const Edge& e = g.edges()[i];
    edge_id[e.u * n + e.v] = edge_id[e.v * n + e.u] = static_cast<int>(i);
  }

  using detail::DfsCandidate;
  using detail::DfsState;

  // First entry: smallest (label(from), label(to)) over oriented edges.
  std::pair<std::string_view, std::string_view> first{};
  bool have_first = false;
  for (const Edge& e : g.edges()) {
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      std::pair<std::string_view, std::string_view> key{name[a], name[b]};
      if (!have_first || key < first) {
        first = key;
        have_first = true;
      }
    }
  }
  std::vector<DfsState> states;
  for (const Edge& e : g.edges()) {
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      if (name[a] != first.first || name[b] != first.second) continue;
      DfsState s;
      s.index_of.assign(n, -1);
      s.used.assign(m, 0);
      s.index_of[a] = 0;
      s.index_of[b] = 1;
      s.vertex_of = {a, b};
      s.rmpath = {0, 1};
      s.used[edge_id[a * n + b]] = 1;
      s.visited = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
      states.push_back(std::move(s));
    }
  }

  CanonicalForm out;
  out.entries.emplace_back(0, 1);

  auto best_of = [&](const DfsState& s) {
    DfsCandidate c;
    const VertexId r = s.vertex_of[s.rmpath.back()];
    for (VertexId w : g.neighbors(r)) {
      if (s.index_of[w] < 0 || s.used[edge_id[r * n + w]]) continue;
      const auto j = static_cast<std::uint32_t>(s.index_of[w]);
      if (!c.valid || j < c.to) {
        c.valid = true;
        c.backward = true;
        c.from = s.rmpath.back();
        c.to = j;
      }
    }
    if (c.valid) return c;
    for (std::size_t pos = s.rmpath.size(); pos-- > 0;) {
      const VertexId p = s.vertex_of[s.rmpath[pos]];
      for (VertexId w : g.neighbors(p)) {
        if (s.index_of[w] >= 0) continue;
        if (!c.valid || name[w] < c.label) {
          c.valid = true;
          c.from = s.rmpath[pos];
          c.label = name[w];
          c.rm_pos = pos;
        }
      }
      if (c.valid) break;
    }
    return c;
  };

  for (std::size_t step = 1; step < m; ++step) {
    std::vector<DfsCandidate> cands;
    cands.reserve(states.size());
    DfsCandidate best;
    for (const DfsState& s : states) {
      cands.push_back(best_of(s));
      if (detail::candidate_less(cands.back(), best)) best = cands.back();
    }
    if (!best.valid) throw GraphError("canonical code: traversal ended early");

    std::vector<DfsState> next;
    std::set<std::pair<std::vector<VertexId>, std::uint64_t>> seen;
    const auto next_index = static_cast<std::uint32_t>(states.front().vertex_of.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (!detail::candidate_equal(cands[i], best)) continue;
      DfsState& s = states[i];
      if (best.backward) {
        const VertexId r = s.vertex_of[best.from];
        const VertexId w = s.vertex_of[best.to];
        s.used[edge_id[r * n + w]] = 1;
        next.push_back(std::move(s));
        continue;
      }
      const VertexId p = s.vertex_of[best.from];
      for (VertexId w : g.neighbors(p)) {
        if (s.index_of[w] >= 0 || name[w] != best.label) continue;
        DfsState t = s;
        t.index_of[w] = static_cast<int>(next_index);
        t.vertex_of.push_back(w);
        t.rmpath.resize(cands[i].rm_pos + 1);
        t.rmpath.push_back(next_index);
        t.used[edge_id[p * n + w]] = 1;
        t.visited |= std::uint64_t{1} << w;
        std::vector<VertexId> key;
        key.reserve(t.rmpath.size());
        for (auto idx : t.rmpath) key.push_back(t.vertex_of[idx]);
        if (seen.emplace(std::move(key), t.visited).second) next.push_back(std::move(t));
      }
    }
    states = std::move(next);
    if (best.backward) {
      out.entries.emplace_back(best.from, best.to);
    } else {
      out.entries.emplace_back(best.from, next_index);
    }
  }

  out.order = states.front().vertex_of;
  if (out.order.size() != n) throw GraphError("canonical code: traversal missed vertices");
  for (auto [from, to] : out.entries) {
    out.code += '(';
    out.code += std::to_string(from);
    out.code += ',';
    out.code += std::to_string(to);
    out.code += ',';
    out.code += name[out.order[from]];
    out.code += ',';
    out.code += name[out.order[to]];
    out.code += ')';
  }
  return out;
}

inline std::string canonical_code(const LabeledGraph& g) { return canonical_form(g).code; }

// A connected graph with at least one edge, stored in canonical vertex order
// (vertex i is discovery index i) with edges in code order. Isomorphic inputs
// produce identical Patterns.
class Pattern {
 public:
  static Pattern from_graph(const LabeledGraph& g) {
    if (g.edge_count() == 0) throw GraphError("a pattern needs at least one edge");
    CanonicalForm cf = canonical_form(g);
    Pattern p;
    for (VertexId v : cf.order) p.graph_.add_vertex(g.label(v));
    for (auto [from, to] : cf.entries) p.graph_.add_edge(from, to);
    p.code_ = std::move(cf.code);
    return p;
  }

  static Pattern single_edge(Label a, Label b) {
    LabeledGraph g;
    g.add_vertex(a);
    g.add_vertex(b);
    g.add_edge(0, 1);
    return from_graph(g);
  }

  const LabeledGraph& graph() const { return graph_; }
  const std::string& code() const { return code_; }
  std::size_t vertex_count() const { return graph_.vertex_count(); }
  std::size_t edge_count() const { return graph_.edge_count(); }

  friend bool operator==(const Pattern& a, const Pattern& b) { return a.code_ == b.code_; }
  friend bool operator<(const Pattern& a, const Pattern& b) { return a.code_ < b.code_; }

 private:
  Pattern() = default;
  LabeledGraph graph_;
  std::string code_;
};

struct PatternCodeLess {
  using is_transparent = void;
  bool operator()(const Pattern& a, const Pattern& b) const { return a.code() < b.code(); }
  bool operator()(const Pattern& a, std::string_view b) const { return a.code() < b; }
  bool operator()(std::string_view a, const Pattern& b) const { return a < b.code(); }
};

}  // namespace dpgm
