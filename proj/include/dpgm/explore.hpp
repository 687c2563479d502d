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

// Classifying the neighbors of a pattern into frequent sub-neighbors,
// frequent super-neighbors and infrequent neighbors.
//
// Three interchangeable strategies produce the same partition:
//   naive  - full support scan of every neighbor;
//   basic  - skips the scans that monotonicity decides (subs of a frequent
//            pattern are frequent, supers of an infrequent one are not);
//   een    - additionally reuses the embeddings of the base pattern: a
//            super-neighbor is contained in D_i iff some embedding of the
//            base extends by its extra edge, and a sub-neighbor only needs
//            testing on graphs outside the base gid set that carry all of
//            its edge label pairs.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dpgm/canonical.hpp"
#include "dpgm/graph.hpp"
#include "dpgm/isomorphism.hpp"
#include "dpgm/lru_cache.hpp"
#include "dpgm/neighborhood.hpp"

namespace dpgm {

enum class NeighborClass { frequent_sub, frequent_super, infrequent };

struct NeighborPartition {
  std::vector<Pattern> n1_sub;    // frequent sub-neighbors
  std::vector<Pattern> n1_super;  // frequent super-neighbors
  std::vector<Pattern> n2;        // infrequent neighbors

  std::size_t size() const { return n1_sub.size() + n1_super.size() + n2.size(); }
  std::size_t frequent_count() const { return n1_sub.size() + n1_super.size(); }
  bool empty() const { return size() == 0; }

  const std::vector<Pattern>& members(NeighborClass c) const {
    switch (c) {
      case NeighborClass::frequent_sub: return n1_sub;
      case NeighborClass::frequent_super: return n1_super;
      default: return n2;
    }
  }

  std::optional<NeighborClass> find(std::string_view code) const {
    for (auto c : {NeighborClass::frequent_sub, NeighborClass::frequent_super,
                   NeighborClass::infrequent}) {
      const auto& v = members(c);
      if (std::binary_search(v.begin(), v.end(), code, PatternCodeLess{})) return c;
    }
    return std::nullopt;
  }

  void sort() {
    for (auto* v : {&n1_sub, &n1_super, &n2}) std::sort(v->begin(), v->end(), PatternCodeLess{});
  }

  friend bool operator==(const NeighborPartition& a, const NeighborPartition& b) {
    return a.n1_sub == b.n1_sub && a.n1_super == b.n1_super && a.n2 == b.n2;
  }
};

struct ExploreContext {
  const GraphDataset& data;
  const RuleSet& rules;
  std::size_t f = 1;
  const ExclusionSet& exclusions;
  // Cap on stored embeddings per graph; past it EEN tests that graph directly.
  std::optional<std::size_t> mapping_limit;
};

// Matcher invocations by phase.
struct ExploreStats {
  std::uint64_t base = 0;     // embeddings of the base pattern
  std::uint64_t sub = 0;
  std::uint64_t back = 0;
  std::uint64_t fwd = 0;
  std::uint64_t spliced = 0;  // patterns reached through excluded neighbors
  std::uint64_t total() const { return base + sub + back + fwd + spliced; }
};

namespace detail {

// Spliced-in patterns are not one-edge neighbors; they go to the sub side
// when strictly smaller than x by (edges, vertices).
inline bool on_sub_side(const Pattern& y, const Pattern& x) {
  if (y.edge_count() != x.edge_count()) return y.edge_count() < x.edge_count();
  return y.vertex_count() < x.vertex_count();
}

inline void place(NeighborPartition& out, const Pattern& y, bool sub_side, bool frequent) {
  if (!frequent) {
    out.n2.push_back(y);
  } else if (sub_side) {
    out.n1_sub.push_back(y);
  } else {
    out.n1_super.push_back(y);
  }
}

// Support by testing every graph, no shortcuts.
inline std::size_t full_scan_support(const Pattern& y, const GraphDataset& d, std::uint64_t& calls) {
  const PatternMatcher matcher(y.graph());
  std::size_t count = 0;
  for (const LabeledGraph& g : d.graphs()) {
    iso_call_counter().fetch_add(1, std::memory_order_relaxed);
    ++calls;
    if (matcher.exists(g)) ++count;
  }
  return count;
}

// support(y) >= f, testing only candidate graphs and stopping once decided.
inline bool frequent_by_candidates(const Pattern& y, const GraphDataset& d, std::size_t f,
                                   std::uint64_t& calls) {
  const GidSet cand = d.candidate_graphs(y.graph());
  std::size_t remaining = cand.count();
  if (remaining < f) return false;
  const PatternMatcher matcher(y.graph());
  std::size_t hits = 0;
  for (auto i = cand.find_first(); i != GidSet::npos; i = cand.find_next(i)) {
    if (hits >= f || hits + remaining < f) break;
    iso_call_counter().fetch_add(1, std::memory_order_relaxed);
    ++calls;
    if (matcher.exists(d.graph(i))) ++hits;
    --remaining;
  }
  return hits >= f;
}

template <class T>
std::vector<const T*> not_excluded(const std::vector<T>& v, const ExclusionSet& excl) {
  std::vector<const T*> out;
  for (const T& n : v) {
    if (!excl.contains(n.pattern)) out.push_back(&n);
  }
  return out;
}

}  // namespace detail

// Frequentness of a sub-neighbor x' of x given x's gid set: x' is in every
// graph of B_x, so only graphs in (intersection of its edge-pair sets) \ B_x
// need a test.
inline bool sub_is_freq(const Pattern& sub, const GidSet& base_gids, const GraphDataset& d,
                        std::size_t f, std::uint64_t* calls = nullptr) {
  std::size_t have = base_gids.count();
  if (have >= f) return true;
  GidSet rest = d.candidate_graphs(sub.graph());
  rest -= base_gids;
  std::size_t remaining = rest.count();
  if (have + remaining < f) return false;
  const PatternMatcher matcher(sub.graph());
  for (auto i = rest.find_first(); i != GidSet::npos; i = rest.find_next(i)) {
    iso_call_counter().fetch_add(1, std::memory_order_relaxed);
    if (calls) ++*calls;
    if (matcher.exists(d.graph(i))) ++have;
    --remaining;
    if (have >= f) return true;
    if (have + remaining < f) return false;
  }
  return have >= f;
}

inline NeighborPartition naive_explore(const Pattern& x, const ExploreContext& ctx,
                                       ExploreStats* stats = nullptr) {
  ExploreStats local;
  NeighborPartition out;
  const RawNeighborhood raw = generate_neighbors(x, ctx.rules);
  auto classify = [&](const Pattern& y, bool sub_side, std::uint64_t& calls) {
    detail::place(out, y, sub_side, detail::full_scan_support(y, ctx.data, calls) >= ctx.f);
  };
  for (const auto* n : detail::not_excluded(raw.sub, ctx.exclusions)) classify(n->pattern, true, local.sub);
  for (const auto* n : detail::not_excluded(raw.super_back, ctx.exclusions)) {
    classify(n->pattern, false, local.back);
  }
  for (const auto* n : detail::not_excluded(raw.super_fwd, ctx.exclusions)) {
    classify(n->pattern, false, local.fwd);
  }
  for (const Pattern& y : spliced_in(x, raw.patterns(), ctx.exclusions, ctx.rules)) {
    classify(y, detail::on_sub_side(y, x), local.spliced);
  }
  out.sort();
  if (stats) *stats = local;
  return out;
}

inline NeighborPartition basic_explore(const Pattern& x, const SupportRecord& bx,
                                       const ExploreContext& ctx, ExploreStats* stats = nullptr) {
  ExploreStats local;
  NeighborPartition out;
  const bool x_frequent = bx.count >= ctx.f;
  const RawNeighborhood raw = generate_neighbors(x, ctx.rules);

  for (const auto* n : detail::not_excluded(raw.sub, ctx.exclusions)) {
    const bool frequent =
        x_frequent || detail::full_scan_support(n->pattern, ctx.data, local.sub) >= ctx.f;
    detail::place(out, n->pattern, true, frequent);
  }
  for (const auto* n : detail::not_excluded(raw.super_back, ctx.exclusions)) {
    const bool frequent =
        x_frequent && detail::full_scan_support(n->pattern, ctx.data, local.back) >= ctx.f;
    detail::place(out, n->pattern, false, frequent);
  }
  for (const auto* n : detail::not_excluded(raw.super_fwd, ctx.exclusions)) {
    const bool frequent =
        x_frequent && detail::full_scan_support(n->pattern, ctx.data, local.fwd) >= ctx.f;
    detail::place(out, n->pattern, false, frequent);
  }
  for (const Pattern& y : spliced_in(x, raw.patterns(), ctx.exclusions, ctx.rules)) {
    const bool frequent = detail::full_scan_support(y, ctx.data, local.spliced) >= ctx.f;
    detail::place(out, y, detail::on_sub_side(y, x), frequent);
  }
  out.sort();
  if (stats) *stats = local;
  return out;
}

// bx must be the exact support record of x; when it carries embeddings they
// are reused, otherwise they are enumerated for the graphs in bx.bitmap as
// needed.
inline NeighborPartition een_explore(const Pattern& x, const SupportRecord& bx,
                                     const ExploreContext& ctx, ExploreStats* stats = nullptr) {
  ExploreStats local;
  NeighborPartition out;
  const std::size_t f = ctx.f;
  const bool x_frequent = bx.count >= f;
  const RawNeighborhood raw = generate_neighbors(x, ctx.rules);

  for (const auto* n : detail::not_excluded(raw.sub, ctx.exclusions)) {
    const bool frequent = x_frequent || sub_is_freq(n->pattern, bx.bitmap, ctx.data, f, &local.sub);
    detail::place(out, n->pattern, true, frequent);
  }

  const auto back = detail::not_excluded(raw.super_back, ctx.exclusions);
  const auto fwd = detail::not_excluded(raw.super_fwd, ctx.exclusions);
  if (!x_frequent) {
    for (const auto* n : back) out.n2.push_back(n->pattern);
    for (const auto* n : fwd) out.n2.push_back(n->pattern);
  } else if (!back.empty() || !fwd.empty()) {
    std::vector<std::size_t> hb(back.size(), 0), hf(fwd.size(), 0);
    std::vector<std::size_t> active_back, active_fwd;
    std::size_t remaining = bx.count;
    const LabeledGraph& xg = x.graph();
    for (auto gid = bx.bitmap.find_first(); gid != GidSet::npos; gid = bx.bitmap.find_next(gid)) {
      // Only counters that have not reached f and still can are worth work.
      active_back.clear();
      active_fwd.clear();
      for (std::size_t j = 0; j < back.size(); ++j) {
        if (hb[j] < f && remaining + hb[j] >= f) active_back.push_back(j);
      }
      for (std::size_t j = 0; j < fwd.size(); ++j) {
        if (hf[j] < f && remaining + hf[j] >= f) active_fwd.push_back(j);
      }
      if (active_back.empty() && active_fwd.empty()) break;
      --remaining;

      const LabeledGraph& host = ctx.data.graph(gid);
      MappingSet owned;
      const MappingSet* ms = bx.has_mappings ? bx.mappings_for(gid) : nullptr;
      if (ms == nullptr) {
        iso_call_counter().fetch_add(1, std::memory_order_relaxed);
        ++local.base;
        owned = PatternMatcher(xg).enumerate(host, ctx.mapping_limit);
        ms = &owned;
      }

      if (ms->truncated) {
        for (std::size_t j : active_back) {
          ++local.back;
          if (is_subgraph(back[j]->pattern, host)) ++hb[j];
        }
        for (std::size_t j : active_fwd) {
          ++local.fwd;
          if (is_subgraph(fwd[j]->pattern, host)) ++hf[j];
        }
        continue;
      }

      for (std::size_t j : active_back) {
        const Edge e = back[j]->added;
        for (const Mapping& m : ms->mappings) {
          if (host.has_edge(m[e.u], m[e.v])) {
            ++hb[j];
            break;
          }
        }
      }
      for (std::size_t j : active_fwd) {
        const VertexId anchor = fwd[j]->anchor;
        const Label want = fwd[j]->label;
        bool found = false;
        for (const Mapping& m : ms->mappings) {
          for (VertexId w : host.neighbors(m[anchor])) {
            if (host.label(w) != want) continue;
            if (std::find(m.begin(), m.end(), w) != m.end()) continue;
            found = true;
            break;
          }
          if (found) break;
        }
        if (found) ++hf[j];
      }
    }
    for (std::size_t j = 0; j < back.size(); ++j) detail::place(out, back[j]->pattern, false, hb[j] >= f);
    for (std::size_t j = 0; j < fwd.size(); ++j) detail::place(out, fwd[j]->pattern, false, hf[j] >= f);
  }

  for (const Pattern& y : spliced_in(x, raw.patterns(), ctx.exclusions, ctx.rules)) {
    const bool frequent = detail::frequent_by_candidates(y, ctx.data, f, local.spliced);
    detail::place(out, y, detail::on_sub_side(y, x), frequent);
  }
  out.sort();
  if (stats) *stats = local;
  return out;
}

enum class ExploreMethod { naive, basic, een };

inline std::string_view to_string(ExploreMethod m) {
  switch (m) {
    case ExploreMethod::naive: return "naive";
    case ExploreMethod::basic: return "basic";
    default: return "een";
  }
}

inline ExploreMethod parse_explore_method(std::string_view s) {
  if (s == "naive") return ExploreMethod::naive;
  if (s == "basic") return ExploreMethod::basic;
  if (s == "een") return ExploreMethod::een;
  throw std::invalid_argument("unknown exploration method '" + std::string(s) + "'");
}

struct ExplorerOptions {
  std::size_t cache_capacity = 4096;  // 0 disables both caches
  std::optional<std::size_t> mapping_limit;
  std::size_t workers = 1;
};

// Supports and partitions for the walk, through one exploration strategy,
// with LRU caches keyed by canonical code. The partition cache is dropped
// whenever the exclusion set changes.
class NeighborExplorer {
 public:
  NeighborExplorer(const GraphDataset& data, const RuleSet& rules, std::size_t f,
                   ExploreMethod method, ExplorerOptions opt = {})
      : data_(data),
        rules_(rules),
        f_(f),
        method_(method),
        opt_(opt),
        supports_(opt.cache_capacity),
        partitions_(opt.cache_capacity) {
    if (f_ < 1) throw std::invalid_argument("support threshold f must be at least 1");
  }

  const GraphDataset& data() const { return data_; }
  const RuleSet& rules() const { return rules_; }
  std::size_t threshold() const { return f_; }
  ExploreMethod method() const { return method_; }

  // Per-call CSV rows: method,code,iso_calls,micros.
  void set_trace(std::ostream* out) { trace_ = out; }

  std::size_t support_count(const Pattern& p) { return support_record(p).count; }

  std::shared_ptr<const NeighborPartition> partition(const Pattern& x, const ExclusionSet& excl) {
    if (excl.version() != cached_version_) {
      partitions_.clear();
      cached_version_ = excl.version();
    }
    if (auto hit = partitions_.get(x.code())) return *hit;

    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t calls_before = iso_calls();
    const ExploreContext ctx{data_, rules_, f_, excl, opt_.mapping_limit};
    std::shared_ptr<const NeighborPartition> result;
    switch (method_) {
      case ExploreMethod::naive:
        result = std::make_shared<NeighborPartition>(naive_explore(x, ctx, &last_stats_));
        break;
      case ExploreMethod::basic:
        result = std::make_shared<NeighborPartition>(
            basic_explore(x, support_record(x), ctx, &last_stats_));
        break;
      case ExploreMethod::een:
        result = std::make_shared<NeighborPartition>(
            een_explore(x, support_record(x), ctx, &last_stats_));
        break;
    }
    if (trace_) {
      const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
      *trace_ << to_string(method_) << ',' << x.code() << ',' << (iso_calls() - calls_before) << ','
              << micros << '\n';
    }
    partitions_.put(x.code(), result);
    return result;
  }

  const ExploreStats& last_stats() const { return last_stats_; }

  void clear_caches() {
    supports_.clear();
    partitions_.clear();
  }

 private:
  // Gid sets only. EEN enumerates embeddings of x lazily, graph by graph,
  // and only while some super-neighbor is undecided; infrequent x needs none.
  SupportRecord support_record(const Pattern& p) {
    if (auto hit = supports_.get(p.code())) return *hit;
    SupportOptions so;
    so.workers = opt_.workers;
    so.prefilter = method_ == ExploreMethod::een;
    SupportRecord rec = support(p, data_, so);
    supports_.put(p.code(), rec);
    return rec;
  }

  const GraphDataset& data_;
  const RuleSet& rules_;
  std::size_t f_;
  ExploreMethod method_;
  ExplorerOptions opt_;
  LruCache<std::string, SupportRecord> supports_;
  LruCache<std::string, std::shared_ptr<const NeighborPartition>> partitions_;
  std::uint64_t cached_version_ = 0;
  ExploreStats last_stats_;
  std::ostream* trace_ = nullptr;
};

}  // namespace dpgm
