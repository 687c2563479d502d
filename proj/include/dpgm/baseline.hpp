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


// Exact, non-private mining: top-k patterns by support, enumeration of small
// pattern spaces and the exact exponential-mechanism distribution over them.

#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpgm/canonical.hpp"
#include "dpgm/graph.hpp"
#include "dpgm/isomorphism.hpp"
#include "dpgm/neighborhood.hpp"
#include "dpgm/parallel.hpp"
#include "dpgm/privacy.hpp"
#include "dpgm/score.hpp"

namespace dpgm {

struct PatternSupport {
  Pattern pattern;
  std::size_t support = 0;
};

struct MiningResult {
  std::vector<PatternSupport> patterns;  // support desc, then code asc
  std::size_t threshold_f = 0;           // support of the k-th pattern
};

inline bool support_order(const PatternSupport& a, const PatternSupport& b) {
  if (a.support != b.support) return a.support > b.support;
  return a.pattern.code() < b.pattern.code();
}

class NotEnoughPatterns : public std::runtime_error {
 public:
  NotEnoughPatterns(std::size_t wanted, std::size_t found)
      : std::runtime_error("asked for " + std::to_string(wanted) + " patterns but only " +
                           std::to_string(found) + " occur under the rules"),
        found_(found) {}
  std::size_t found() const { return found_; }

 private:
  std::size_t found_;
};

// Level-wise growth by edge count. A candidate survives only if every
// sub-neighbor was kept with support at least tau, where tau is the current
// k-th best support among reportable patterns. Tau only rises, so nothing
// with final support >= f is ever pruned. A candidate is only tested on the
// graphs containing all of its sub-neighbors.
inline MiningResult mine_exact_topk(const GraphDataset& d, std::size_t k, const RuleSet& rules,
                                    std::size_t workers = 1) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  rules.validate();
  const RuleSet walk = rules.walk_rules();

  struct Entry {
    Pattern pattern;
    GidSet gids;
    std::size_t support;
  };
  std::map<std::string, Entry, std::less<>> table;
  std::vector<std::size_t> best;  // reportable supports, kept sorted desc, size <= k

  auto tau = [&] { return best.size() < k ? std::size_t{1} : best.back(); };
  auto admit = [&](const Entry& e) {
    if (!rules.admits_output(e.pattern.graph())) return;
    best.insert(std::upper_bound(best.begin(), best.end(), e.support, std::greater<>()), e.support);
    if (best.size() > k) best.pop_back();
  };

  std::vector<Entry> level;
  {
    const std::vector<Label> ls = sorted_by_name(rules.labels);
    for (std::size_t i = 0; i < ls.size(); ++i) {
      for (std::size_t j = i; j < ls.size(); ++j) {
        const GidSet& g = d.graphs_with_edge(ls[i], ls[j]);
        if (g.none()) continue;
        // The edge index is exact for single edges.
        level.push_back({Pattern::single_edge(ls[i], ls[j]), g, g.count()});
      }
    }
  }

  while (!level.empty()) {
    for (const Entry& e : level) admit(e);
    std::vector<const Entry*> keep;
    for (Entry& e : level) {
      std::string code = e.pattern.code();
      auto [it, ok] = table.emplace(std::move(code), std::move(e));
      (void)ok;
      keep.push_back(&it->second);
    }

    // Candidates one edge larger, from kept patterns that still clear tau.
    std::map<std::string, Pattern, std::less<>> cands;
    for (const Entry* e : keep) {
      if (e->support < tau()) continue;
      const RawNeighborhood raw = generate_neighbors(e->pattern, walk);
      for (const auto& n : raw.super_back) cands.emplace(n.pattern.code(), n.pattern);
      for (const auto& n : raw.super_fwd) cands.emplace(n.pattern.code(), n.pattern);
    }

    struct Job {
      Pattern pattern;
      GidSet gids;
    };
    std::vector<Job> jobs;
    const std::size_t t = tau();
    for (auto& [code, p] : cands) {
      GidSet gids(d.size());
      gids.set();
      bool ok = true;
      for (const SubNeighbor& s : generate_neighbors(p, walk).sub) {
        auto it = table.find(s.pattern.code());
        if (it == table.end() || it->second.support < t) {
          ok = false;
          break;
        }
        gids &= it->second.gids;
      }
      if (ok && gids.count() >= t) jobs.push_back({p, std::move(gids)});
    }

    std::vector<std::optional<Entry>> next(jobs.size());
    parallel_for(jobs.size(), workers, [&](std::size_t j) {
      const Job& job = jobs[j];
      const PatternMatcher matcher(job.pattern.graph());
      GidSet hits(d.size());
      for (auto i = job.gids.find_first(); i != GidSet::npos; i = job.gids.find_next(i)) {
        iso_call_counter().fetch_add(1, std::memory_order_relaxed);
        if (matcher.exists(d.graph(i))) hits.set(i);
      }
      next[j] = Entry{job.pattern, hits, hits.count()};
    });
    level.clear();
    for (auto& e : next) {
      if (e->support >= 1) level.push_back(std::move(*e));
    }
  }

  std::vector<PatternSupport> all;
  for (const auto& [code, e] : table) {
    if (rules.admits_output(e.pattern.graph()) && e.support >= 1) all.push_back({e.pattern, e.support});
  }
  std::sort(all.begin(), all.end(), support_order);
  if (all.size() < k) throw NotEnoughPatterns(k, all.size());
  all.erase(all.begin() + static_cast<std::ptrdiff_t>(k), all.end());
  MiningResult r;
  r.threshold_f = all.back().support;
  r.patterns = std::move(all);
  return r;
}

class SpaceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxEnumeratedClasses = 100000;

// Every connected pattern class under the rules (v_min ignored), sorted by
// code. Breadth-first from single edges over super-neighbors.
inline std::vector<Pattern> enumerate_space(const RuleSet& rules,
                                            std::size_t max_classes = kMaxEnumeratedClasses) {
  rules.validate();
  const RuleSet walk = rules.walk_rules();
  std::set<std::string> seen;
  std::vector<Pattern> out;
  std::deque<Pattern> queue;
  auto visit = [&](const Pattern& p) {
    if (!seen.insert(p.code()).second) return;
    if (seen.size() > max_classes) {
      throw SpaceTooLarge("pattern space has more than " + std::to_string(max_classes) + " classes");
    }
    out.push_back(p);
    queue.push_back(p);
  };
  const std::vector<Label> ls = sorted_by_name(rules.labels);
  for (std::size_t i = 0; i < ls.size(); ++i) {
    for (std::size_t j = i; j < ls.size(); ++j) visit(Pattern::single_edge(ls[i], ls[j]));
  }
  while (!queue.empty()) {
    const Pattern p = queue.front();
    queue.pop_front();
    const RawNeighborhood raw = generate_neighbors(p, walk);
    for (const auto& n : raw.super_back) visit(n.pattern);
    for (const auto& n : raw.super_fwd) visit(n.pattern);
  }
  std::sort(out.begin(), out.end(), PatternCodeLess{});
  return out;
}

// Exact stationary law of the sampler over an enumerated space.
inline std::vector<double> target_distribution(const std::vector<Pattern>& space, const GraphDataset& d,
                                               const PrivacyBudget& b, const ScoreFunction& sf) {
  std::vector<double> scores;
  scores.reserve(space.size());
  for (const Pattern& p : space) scores.push_back(sf(support(p, d).count));
  return exp_mechanism_weights(scores, b.eps1, b.k, sf.delta_u);
}

}  // namespace dpgm
