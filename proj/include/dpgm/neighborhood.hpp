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

// One-edge neighborhoods in the pattern lattice and removal of already
// reported patterns from it.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "dpgm/canonical.hpp"
#include "dpgm/graph.hpp"

namespace dpgm {

// Edge removed from x (indices of x).
struct SubNeighbor {
  Pattern pattern;
  Edge removed;
};

// Edge added between two existing, non-adjacent vertices of x.
struct BackNeighbor {
  Pattern pattern;
  Edge added;
};

// New vertex with `label` attached to `anchor` of x.
struct ForwardNeighbor {
  Pattern pattern;
  VertexId anchor = 0;
  Label label;
};

// Each list is deduplicated by canonical code and sorted by code. The edge
// or anchor kept for a class is one witness; any witness works for
// containment tests because all embeddings of x are considered.
struct RawNeighborhood {
  std::vector<SubNeighbor> sub;
  std::vector<BackNeighbor> super_back;
  std::vector<ForwardNeighbor> super_fwd;

  std::size_t size() const { return sub.size() + super_back.size() + super_fwd.size(); }

  std::vector<Pattern> patterns() const {
    std::vector<Pattern> out;
    out.reserve(size());
    for (const auto& n : sub) out.push_back(n.pattern);
    for (const auto& n : super_back) out.push_back(n.pattern);
    for (const auto& n : super_fwd) out.push_back(n.pattern);
    return out;
  }
};

namespace detail {

template <class T>
void dedupe_by_code(std::vector<T>& v) {
  std::stable_sort(v.begin(), v.end(),
                   [](const T& a, const T& b) { return a.pattern.code() < b.pattern.code(); });
  v.erase(std::unique(v.begin(), v.end(),
                      [](const T& a, const T& b) { return a.pattern.code() == b.pattern.code(); }),
          v.end());
}

}  // namespace detail

// Sub-neighbors drop one edge and stay connected, or drop a pendant edge
// together with the vertex it isolates; the last edge is never removed.
// Super-neighbors add a back edge or a forward edge to a new vertex labeled
// from rules.labels, within v_max and e_max.
inline RawNeighborhood generate_neighbors(const Pattern& x, const RuleSet& rules) {
  RawNeighborhood out;
  const LabeledGraph& g = x.graph();
  const std::size_t n = g.vertex_count();

  if (g.edge_count() > 1) {
    for (const Edge& e : g.edges()) {
      LabeledGraph h = g;
      h.remove_edge(e.u, e.v);
      if (h.degree(e.u) == 0) {
        h.remove_isolated_vertex(e.u);
      } else if (h.degree(e.v) == 0) {
        h.remove_isolated_vertex(e.v);
      } else if (!h.is_connected()) {
        continue;
      }
      out.sub.push_back({Pattern::from_graph(h), e});
    }
  }

  if (g.edge_count() < rules.e_max) {
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) {
        if (g.has_edge(u, v)) continue;
        LabeledGraph h = g;
        h.add_edge(u, v);
        out.super_back.push_back({Pattern::from_graph(h), Edge{u, v}});
      }
    }
    if (n < rules.v_max) {
      for (VertexId u = 0; u < n; ++u) {
        for (Label l : rules.labels) {
          LabeledGraph h = g;
          const VertexId w = h.add_vertex(l);
          h.add_edge(u, w);
          out.super_fwd.push_back({Pattern::from_graph(h), u, l});
        }
      }
    }
  }

  detail::dedupe_by_code(out.sub);
  detail::dedupe_by_code(out.super_back);
  detail::dedupe_by_code(out.super_fwd);
  return out;
}

// Canonical codes of patterns already reported in this run. Only grows;
// version() changes on every insertion so caches can notice.
class ExclusionSet {
 public:
  bool insert(const std::string& code) {
    const bool added = codes_.insert(code).second;
    if (added) ++version_;
    return added;
  }
  bool contains(const std::string& code) const { return codes_.count(code) != 0; }
  bool contains(const Pattern& p) const { return contains(p.code()); }
  std::size_t size() const { return codes_.size(); }
  bool empty() const { return codes_.empty(); }
  std::uint64_t version() const { return version_; }

 private:
  std::unordered_set<std::string> codes_;
  std::uint64_t version_ = 0;
};

// Non-excluded patterns reachable from x through excluded ones: every
// excluded g in `neighbors` is replaced by g's neighbors, transitively,
// never yielding x itself. Sorted by code, disjoint from `neighbors`.
inline std::vector<Pattern> spliced_in(const Pattern& x, const std::vector<Pattern>& neighbors,
                                       const ExclusionSet& excl, const RuleSet& rules) {
  std::vector<Pattern> out;
  if (excl.empty()) return out;
  std::set<std::string> seen{x.code()};
  for (const Pattern& p : neighbors) seen.insert(p.code());
  std::deque<Pattern> queue;
  for (const Pattern& p : neighbors) {
    if (excl.contains(p)) queue.push_back(p);
  }
  while (!queue.empty()) {
    const Pattern g = std::move(queue.front());
    queue.pop_front();
    for (Pattern& h : generate_neighbors(g, rules).patterns()) {
      if (!seen.insert(h.code()).second) continue;
      if (excl.contains(h)) {
        queue.push_back(std::move(h));
      } else {
        out.push_back(std::move(h));
      }
    }
  }
  std::sort(out.begin(), out.end(), PatternCodeLess{});
  return out;
}

// The neighborhood of x after removing excluded patterns: raw neighbors that
// are not excluded, plus the spliced-in replacements. Sorted by code.
inline std::vector<Pattern> splice_exclusions(const Pattern& x, const std::vector<Pattern>& raw,
                                              const ExclusionSet& excl, const RuleSet& rules) {
  std::vector<Pattern> out;
  for (const Pattern& p : raw) {
    if (!excl.contains(p)) out.push_back(p);
  }
  for (Pattern& p : spliced_in(x, raw, excl, rules)) out.push_back(std::move(p));
  std::sort(out.begin(), out.end(), PatternCodeLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dpgm
