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


// Brute-force reference implementations used only by tests. They share no
// code with the library beyond the graph container.

#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "dpgm/graph.hpp"
#include "dpgm/label.hpp"

namespace oracle {

using dpgm::Label;
using dpgm::LabeledGraph;
using dpgm::VertexId;

// Calls visit(map) for every injective, label- and edge-preserving map.
inline void each_embedding(const LabeledGraph& p, const LabeledGraph& h,
                           const std::function<bool(const std::vector<VertexId>&)>& visit) {
  const std::size_t n = p.vertex_count();
  std::vector<VertexId> map(n);
  std::vector<char> used(h.vertex_count(), 0);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == n) {
      for (const auto& e : p.edges()) {
        if (!h.has_edge(map[e.u], map[e.v])) return;
      }
      if (!visit(map)) stop = true;
      return;
    }
    for (VertexId c = 0; c < h.vertex_count(); ++c) {
      if (used[c] || h.label(c) != p.label(i)) continue;
      used[c] = 1;
      map[i] = c;
      rec(i + 1);
      used[c] = 0;
      if (stop) return;
    }
  };
  rec(0);
}

inline bool contains(const LabeledGraph& p, const LabeledGraph& h) {
  bool found = false;
  each_embedding(p, h, [&](const std::vector<VertexId>&) {
    found = true;
    return false;
  });
  return found;
}

inline std::size_t count_embeddings(const LabeledGraph& p, const LabeledGraph& h) {
  std::size_t n = 0;
  each_embedding(p, h, [&](const std::vector<VertexId>&) {
    ++n;
    return true;
  });
  return n;
}

inline bool isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
  return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() && contains(a, b);
}

inline std::size_t support(const LabeledGraph& p, const dpgm::GraphDataset& d) {
  std::size_t n = 0;
  for (const auto& g : d.graphs()) n += contains(p, g) ? 1 : 0;
  return n;
}

// Keeps one representative per isomorphism class, in first-seen order.
inline std::vector<LabeledGraph> dedupe(const std::vector<LabeledGraph>& gs) {
  std::vector<LabeledGraph> out;
  for (const auto& g : gs) {
    if (std::none_of(out.begin(), out.end(), [&](const LabeledGraph& o) { return isomorphic(o, g); })) {
      out.push_back(g);
    }
  }
  return out;
}

// Every connected graph with 2..v_max vertices, 1..e_max edges and labels
// from `labels`, one per isomorphism class.
inline std::vector<LabeledGraph> all_patterns(const std::vector<Label>& labels, std::size_t v_max,
                                              std::size_t e_max) {
  std::vector<LabeledGraph> raw;
  for (std::size_t n = 2; n <= v_max; ++n) {
    std::vector<std::pair<VertexId, VertexId>> slots;
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    }
    std::vector<std::size_t> lab(n, 0);
    while (true) {
      // Non-decreasing label sequences suffice up to isomorphism.
      if (std::is_sorted(lab.begin(), lab.end())) {
        for (std::uint64_t mask = 1; mask < (1ull << slots.size()); ++mask) {
          if (static_cast<std::size_t>(__builtin_popcountll(mask)) > e_max) continue;
          LabeledGraph g;
          for (std::size_t v = 0; v < n; ++v) g.add_vertex(labels[lab[v]]);
          for (std::size_t s = 0; s < slots.size(); ++s) {
            if (mask >> s & 1) g.add_edge(slots[s].first, slots[s].second);
          }
          if (g.is_connected()) raw.push_back(std::move(g));
        }
      }
      std::size_t i = 0;
      while (i < n && ++lab[i] == labels.size()) lab[i++] = 0;
      if (i == n) break;
    }
  }
  return dedupe(raw);
}

// One-edge neighbors of x by direct edit, one per class.
struct Neighbors {
  std::vector<LabeledGraph> sub, back, fwd;
};

inline LabeledGraph drop_vertex(const LabeledGraph& g, VertexId gone) {
  LabeledGraph h;
  std::vector<VertexId> id(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v != gone) id[v] = h.add_vertex(g.label(v));
  }
  for (const auto& e : g.edges()) {
    if (e.u != gone && e.v != gone) h.add_edge(id[e.u], id[e.v]);
  }
  return h;
}

inline Neighbors neighbors(const LabeledGraph& x, const std::vector<Label>& labels, std::size_t v_max,
                           std::size_t e_max) {
  Neighbors out;
  const auto edges = std::vector<dpgm::Edge>(x.edges().begin(), x.edges().end());
  if (edges.size() > 1) {
    for (std::size_t skip = 0; skip < edges.size(); ++skip) {
      LabeledGraph h;
      for (VertexId v = 0; v < x.vertex_count(); ++v) h.add_vertex(x.label(v));
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i != skip) h.add_edge(edges[i].u, edges[i].v);
      }
      for (VertexId v : {edges[skip].u, edges[skip].v}) {
        if (h.degree(v) == 0) {
          h = drop_vertex(h, v);
          break;
        }
      }
      if (h.is_connected()) out.sub.push_back(h);
    }
  }
  if (edges.size() < e_max) {
    for (VertexId u = 0; u < x.vertex_count(); ++u) {
      for (VertexId v = u + 1; v < x.vertex_count(); ++v) {
        if (x.has_edge(u, v)) continue;
        LabeledGraph h = x;
        h.add_edge(u, v);
        out.back.push_back(h);
      }
    }
    if (x.vertex_count() < v_max) {
      for (VertexId u = 0; u < x.vertex_count(); ++u) {
        for (Label l : labels) {
          LabeledGraph h = x;
          h.add_edge(u, h.add_vertex(l));
          out.fwd.push_back(h);
        }
      }
    }
  }
  out.sub = dedupe(out.sub);
  out.back = dedupe(out.back);
  out.fwd = dedupe(out.fwd);
  return out;
}

// Random connected labeled graph with n vertices and about `extra` non-tree
// edges.
template <class Rng>
LabeledGraph random_connected(Rng& rng, std::size_t n, std::size_t extra, const std::vector<Label>& labels) {
  LabeledGraph g;
  std::uniform_int_distribution<std::size_t> lab(0, labels.size() - 1);
  for (std::size_t v = 0; v < n; ++v) g.add_vertex(labels[lab(rng)]);
  for (VertexId v = 1; v < n; ++v) {
    std::uniform_int_distribution<VertexId> par(0, v - 1);
    g.add_edge(par(rng), v);
  }
  if (n >= 2) {
    std::uniform_int_distribution<VertexId> any(0, static_cast<VertexId>(n - 1));
    for (std::size_t i = 0; i < extra; ++i) {
      const VertexId a = any(rng), b = any(rng);
      if (a != b && !g.has_edge(a, b)) g.add_edge(a, b);
    }
  }
  return g;
}

// The same graph with vertices relabeled by a random permutation and edges
// inserted in random order.
template <class Rng>
LabeledGraph shuffled(const LabeledGraph& g, Rng& rng) {
  std::vector<VertexId> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<VertexId> inv(perm.size());
  for (VertexId i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  LabeledGraph h;
  for (VertexId i = 0; i < perm.size(); ++i) h.add_vertex(g.label(inv[i]));
  std::vector<dpgm::Edge> es(g.edges().begin(), g.edges().end());
  std::shuffle(es.begin(), es.end(), rng);
  for (const auto& e : es) {
    if (rng() & 1) {
      h.add_edge(perm[e.v], perm[e.u]);
    } else {
      h.add_edge(perm[e.u], perm[e.v]);
    }
  }
  return h;
}

template <class Rng>
dpgm::GraphDataset random_dataset(Rng& rng, std::size_t max_graphs, std::size_t max_vertices,
                                  const std::vector<Label>& labels) {
  std::uniform_int_distribution<std::size_t> count(1, max_graphs), size(2, max_vertices), extra(0, 4);
  std::vector<LabeledGraph> gs;
  const std::size_t m = count(rng);
  for (std::size_t i = 0; i < m; ++i) gs.push_back(random_connected(rng, size(rng), extra(rng), labels));
  return dpgm::GraphDataset(std::move(gs));
}

inline std::vector<Label> labels(std::initializer_list<const char*> names) {
  std::vector<Label> out;
  for (const char* n : names) out.push_back(Label::of(n));
  return out;
}

}  // namespace oracle
