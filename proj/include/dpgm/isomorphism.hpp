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

// Non-induced subgraph isomorphism: a mapping is injective, label-preserving
// and edge-preserving; extra host edges between mapped vertices are allowed.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "dpgm/canonical.hpp"
#include "dpgm/graph.hpp"
#include "dpgm/parallel.hpp"

namespace dpgm {

// mapping[v] is the host vertex assigned to pattern vertex v.
using Mapping = std::vector<VertexId>;

struct MappingSet {
  std::vector<Mapping> mappings;
  bool truncated = false;  // the limit was reached; the set is incomplete
};

// Monotone count of matcher invocations: one per is_subgraph and one per
// enumerate_mappings call.
inline std::atomic<std::uint64_t>& iso_call_counter() {
  static std::atomic<std::uint64_t> counter{0};
  return counter;
}

inline std::uint64_t iso_calls() { return iso_call_counter().load(std::memory_order_relaxed); }

// Backtracking matcher with a fixed, connectivity-first pattern vertex order.
// Each vertex after the first is drawn from the host neighbors of an already
// mapped pattern neighbor; root candidates go by ascending host degree.
class PatternMatcher {
 public:
  explicit PatternMatcher(const LabeledGraph& pattern) : pattern_(&pattern) { plan(); }

  // Calls visit(mapping) for every embedding until visit returns false.
  template <class Visit>
  void for_each(const LabeledGraph& host, Visit&& visit) const {
    const LabeledGraph& p = *pattern_;
    if (p.vertex_count() == 0 || host.vertex_count() < p.vertex_count() ||
        host.edge_count() < p.edge_count()) {
      return;
    }
    Mapping mapping(p.vertex_count(), kUnmapped);
    std::vector<char> used(host.vertex_count(), 0);
    std::vector<VertexId> roots;
    for (VertexId h = 0; h < host.vertex_count(); ++h) {
      if (host.label(h) == steps_[0].label && host.degree(h) >= steps_[0].degree) roots.push_back(h);
    }
    std::stable_sort(roots.begin(), roots.end(), [&](VertexId a, VertexId b) {
      return host.degree(a) < host.degree(b);
    });
    bool stop = false;
    auto extend = [&](auto&& self, std::size_t pos) -> void {
      if (pos == steps_.size()) {
        if (!visit(static_cast<const Mapping&>(mapping))) stop = true;
        return;
      }
      const Step& st = steps_[pos];
      auto try_candidate = [&](VertexId h) {
        if (used[h] || host.label(h) != st.label || host.degree(h) < st.degree) return;
        for (VertexId q : st.checks) {
          if (!host.has_edge(h, mapping[q])) return;
        }
        mapping[st.vertex] = h;
        used[h] = 1;
        self(self, pos + 1);
        used[h] = 0;
        mapping[st.vertex] = kUnmapped;
      };
      if (st.parent == kUnmapped) {
        if (pos == 0) {
          for (VertexId h : roots) {
            try_candidate(h);
            if (stop) return;
          }
        } else {
          for (VertexId h = 0; h < host.vertex_count(); ++h) {
            try_candidate(h);
            if (stop) return;
          }
        }
      } else {
        for (VertexId h : host.neighbors(mapping[st.parent])) {
          try_candidate(h);
          if (stop) return;
        }
      }
    };
    extend(extend, 0);
  }

  bool exists(const LabeledGraph& host) const {
    bool found = false;
    for_each(host, [&](const Mapping&) {
      found = true;
      return false;
    });
    return found;
  }

  MappingSet enumerate(const LabeledGraph& host, std::optional<std::size_t> limit) const {
    MappingSet out;
    if (limit) limit = std::max<std::size_t>(*limit, 1);
    for_each(host, [&](const Mapping& m) {
      if (limit && out.mappings.size() >= *limit) {
        out.truncated = true;
        return false;
      }
      out.mappings.push_back(m);
      return true;
    });
    return out;
  }

 private:
  static constexpr VertexId kUnmapped = std::numeric_limits<VertexId>::max();

  struct Step {
    VertexId vertex = 0;
    Label label;
    std::size_t degree = 0;
    VertexId parent = kUnmapped;   // earlier pattern neighbor used for candidates
    std::vector<VertexId> checks;  // other earlier neighbors: adjacency required
  };

  void plan() {
    const LabeledGraph& p = *pattern_;
    const std::size_t n = p.vertex_count();
    std::vector<char> placed(n, 0);
    std::vector<std::size_t> links(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      VertexId best = kUnmapped;
      for (VertexId v = 0; v < n; ++v) {
        if (placed[v]) continue;
        if (best == kUnmapped || links[v] > links[best] ||
            (links[v] == links[best] && p.degree(v) > p.degree(best))) {
          best = v;
        }
      }
      Step st;
      st.vertex = best;
      st.label = p.label(best);
      st.degree = p.degree(best);
      for (VertexId w : p.neighbors(best)) {
        if (!placed[w]) continue;
        if (st.parent == kUnmapped) {
          st.parent = w;
        } else {
          st.checks.push_back(w);
        }
      }
      placed[best] = 1;
      for (VertexId w : p.neighbors(best)) ++links[w];
      steps_.push_back(std::move(st));
    }
  }

  const LabeledGraph* pattern_;
  std::vector<Step> steps_;
};

inline bool is_subgraph(const LabeledGraph& pattern, const LabeledGraph& host) {
  iso_call_counter().fetch_add(1, std::memory_order_relaxed);
  return PatternMatcher(pattern).exists(host);
}

inline bool is_subgraph(const Pattern& pattern, const LabeledGraph& host) {
  return is_subgraph(pattern.graph(), host);
}

inline MappingSet enumerate_mappings(const LabeledGraph& pattern, const LabeledGraph& host,
                                     std::optional<std::size_t> limit = std::nullopt) {
  iso_call_counter().fetch_add(1, std::memory_order_relaxed);
  return PatternMatcher(pattern).enumerate(host, limit);
}

inline MappingSet enumerate_mappings(const Pattern& pattern, const LabeledGraph& host,
                                     std::optional<std::size_t> limit = std::nullopt) {
  return enumerate_mappings(pattern.graph(), host, limit);
}

struct GraphMappings {
  std::size_t gid = 0;
  MappingSet set;
};

// gid set of a pattern, its size, and optionally every embedding per
// containing graph (ascending gid).
struct SupportRecord {
  GidSet bitmap;
  std::size_t count = 0;
  bool has_mappings = false;
  std::vector<GraphMappings> mappings;

  const MappingSet* mappings_for(std::size_t gid) const {
    auto it = std::lower_bound(mappings.begin(), mappings.end(), gid,
                               [](const GraphMappings& g, std::size_t id) { return g.gid < id; });
    return (it != mappings.end() && it->gid == gid) ? &it->set : nullptr;
  }

  SupportRecord without_mappings() const {
    SupportRecord r;
    r.bitmap = bitmap;
    r.count = count;
    return r;
  }
};

struct SupportOptions {
  bool keep_mappings = false;
  std::optional<std::size_t> mapping_limit;
  // Only test graphs that contain every edge label pair of the pattern.
  bool prefilter = true;
  std::size_t workers = 1;
};

inline SupportRecord support(const Pattern& p, const GraphDataset& d, const SupportOptions& opt = {}) {
  SupportRecord rec;
  rec.bitmap = GidSet(d.size());
  rec.has_mappings = opt.keep_mappings;
  if (d.empty()) return rec;

  std::vector<std::size_t> targets;
  if (opt.prefilter) {
    const GidSet cand = d.candidate_graphs(p.graph());
    for (auto i = cand.find_first(); i != GidSet::npos; i = cand.find_next(i)) targets.push_back(i);
  } else {
    targets.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) targets[i] = i;
  }

  const PatternMatcher matcher(p.graph());
  std::vector<char> hit(targets.size(), 0);
  std::vector<MappingSet> sets(opt.keep_mappings ? targets.size() : 0);
  parallel_for(targets.size(), opt.workers, [&](std::size_t t) {
    iso_call_counter().fetch_add(1, std::memory_order_relaxed);
    const LabeledGraph& host = d.graph(targets[t]);
    if (opt.keep_mappings) {
      sets[t] = matcher.enumerate(host, opt.mapping_limit);
      hit[t] = !sets[t].mappings.empty();
    } else {
      hit[t] = matcher.exists(host);
    }
  });
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (!hit[t]) continue;
    rec.bitmap.set(targets[t]);
    if (opt.keep_mappings) rec.mappings.push_back({targets[t], std::move(sets[t])});
  }
  rec.count = rec.bitmap.count();
  return rec;
}

}  // namespace dpgm
