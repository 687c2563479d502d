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


// Metropolis-Hastings walk over the pattern lattice whose stationary law is
// the exponential mechanism over pattern supports, and the k-round top-k
// driver built on it.

#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dpgm/canonical.hpp"
#include "dpgm/diagnostics.hpp"
#include "dpgm/explore.hpp"
#include "dpgm/graph.hpp"
#include "dpgm/neighborhood.hpp"
#include "dpgm/privacy.hpp"
#include "dpgm/score.hpp"

namespace dpgm {

struct ProposalParams {
  double eta = 0.9;  // mass on frequent neighbors
  double rho = 0.5;  // share of that mass on frequent sub-neighbors

  void validate() const {
    if (!(eta > 0 && eta <= 1)) throw std::invalid_argument("eta must lie in (0, 1]");
    if (!(rho >= 0 && rho <= 1)) throw std::invalid_argument("rho must lie in [0, 1]");
  }
};

// No neighbor at all: the chain cannot move.
class WalkStuck : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The reverse move has zero probability; the neighborhood is not symmetric.
class ReversibilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Proposal probability of each single member of the three classes, after
// moving the mass of empty classes: no frequent sub-neighbor sets rho to 0,
// no frequent super-neighbor sets rho to 1, no infrequent neighbor sets eta
// to 1 and no frequent neighbor sets eta to 0.
struct ProposalMasses {
  double sub = 0;
  double super = 0;
  double infrequent = 0;
  double eta = 0;
  double rho = 0;

  double of(NeighborClass c) const {
    switch (c) {
      case NeighborClass::frequent_sub: return sub;
      case NeighborClass::frequent_super: return super;
      default: return infrequent;
    }
  }
};

inline ProposalMasses proposal_masses(const NeighborPartition& p, const ProposalParams& pp) {
  if (p.empty()) throw WalkStuck("pattern has no neighbors");
  ProposalMasses m;
  m.eta = pp.eta;
  m.rho = pp.rho;
  if (p.n2.empty()) {
    m.eta = 1.0;
  } else if (p.frequent_count() == 0) {
    m.eta = 0.0;
  }
  if (p.n1_sub.empty()) {
    m.rho = 0.0;
  } else if (p.n1_super.empty()) {
    m.rho = 1.0;
  }
  if (!p.n1_sub.empty()) m.sub = m.rho * m.eta / static_cast<double>(p.n1_sub.size());
  if (!p.n1_super.empty()) m.super = (1.0 - m.rho) * m.eta / static_cast<double>(p.n1_super.size());
  if (!p.n2.empty()) m.infrequent = (1.0 - m.eta) / static_cast<double>(p.n2.size());
  return m;
}

// Probability of proposing `code` from a state with partition p; 0 when it
// is not a neighbor.
inline double proposal_mass(const NeighborPartition& p, std::string_view code,
                            const ProposalParams& pp) {
  const auto c = p.find(code);
  return c ? proposal_masses(p, pp).of(*c) : 0.0;
}

struct Proposal {
  Pattern y;
  double q_xy = 0;
};

template <class Rng>
Proposal propose(const NeighborPartition& p, const ProposalParams& pp, Rng& rng) {
  const ProposalMasses m = proposal_masses(p, pp);
  const double w_sub = m.sub * static_cast<double>(p.n1_sub.size());
  const double w_super = m.super * static_cast<double>(p.n1_super.size());
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double u = uni(rng);
  NeighborClass c;
  if (u < w_sub) {
    c = NeighborClass::frequent_sub;
  } else if (u < w_sub + w_super) {
    c = NeighborClass::frequent_super;
  } else {
    c = NeighborClass::infrequent;
  }
  // Rounding can land u in an empty class at the edges of [0, 1).
  if (p.members(c).empty()) {
    for (auto alt : {NeighborClass::infrequent, NeighborClass::frequent_super,
                     NeighborClass::frequent_sub}) {
      if (!p.members(alt).empty() && m.of(alt) > 0) {
        c = alt;
        break;
      }
    }
  }
  const auto& members = p.members(c);
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  return {members[pick(rng)], m.of(c)};
}

// min(exp(c u_y) q_yx / (exp(c u_x) q_xy), 1) with c = eps1 / (2 k delta_u).
inline double accept_prob(double u_x, double u_y, double q_xy, double q_yx, const PrivacyBudget& b,
                          const ScoreFunction& sf) {
  if (!(q_xy > 0)) throw std::invalid_argument("forward proposal mass must be positive");
  if (!(q_yx > 0)) throw ReversibilityError("reverse proposal mass is zero");
  const double log_ratio =
      b.exponent_scale(sf.delta_u) * (u_y - u_x) + std::log(q_yx) - std::log(q_xy);
  return log_ratio >= 0 ? 1.0 : std::exp(log_ratio);
}

// Uniform single-edge pattern over unordered label pairs; uses no data.
template <class Rng>
Pattern initial_pattern(const RuleSet& rules, Rng& rng) {
  if (rules.labels.empty()) throw std::invalid_argument("label alphabet is empty");
  if (rules.v_min > 2 || rules.v_max < 2 || rules.e_max < 1) {
    throw std::invalid_argument("rules admit no single-edge pattern");
  }
  const std::vector<Label> ls = sorted_by_name(rules.labels);
  const std::size_t n = ls.size();
  std::uniform_int_distribution<std::size_t> pick(0, n * (n + 1) / 2 - 1);
  std::size_t r = pick(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t row = n - i;
    if (r < row) return Pattern::single_edge(ls[i], ls[i + r]);
    r -= row;
  }
  throw std::logic_error("label pair index out of range");
}

struct WalkState {
  Pattern current;
  std::shared_ptr<const NeighborPartition> partition;
  std::size_t support = 0;
  std::size_t iteration = 0;
  std::uint64_t accepted = 0;
};

struct SampledPattern {
  Pattern pattern;
  std::size_t true_support = 0;
  std::optional<double> noisy_support;
  std::size_t iterations = 0;
  bool converged = false;
};

struct SamplerConfig {
  std::size_t f = 1;
  PrivacyBudget budget;
  ScoreKind score = ScoreKind::linear;
  ProposalParams proposal;
  ConvergencePolicy convergence;
  RuleSet rules;
  ExploreMethod method = ExploreMethod::een;
  ExplorerOptions explorer;
  std::uint64_t seed = 0;

  ScoreFunction score_function() const { return ScoreFunction{score, f, 1.0}; }

  void validate() const {
    if (f < 1) throw std::invalid_argument("support threshold f must be at least 1");
    budget.validate();
    proposal.validate();
    convergence.validate();
    rules.validate();
  }
};

// Walk stream and Laplace stream are separate so the noise never shifts the
// walk.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

class Sampler {
 public:
  Sampler(const GraphDataset& data, SamplerConfig cfg)
      : data_(data),
        cfg_(std::move(cfg)),
        walk_rules_(cfg_.rules.walk_rules()),
        explorer_(data_, walk_rules_, cfg_.f, cfg_.method, cfg_.explorer),
        rng_(make_stream(cfg_.seed, 0)) {
    cfg_.validate();
  }

  const SamplerConfig& config() const { return cfg_; }
  NeighborExplorer& explorer() { return explorer_; }
  std::mt19937_64& rng() { return rng_; }

  // Rows: round,iteration,metric,value,z (z empty until defined).
  void set_trace(std::ostream* out) { trace_ = out; }

  double score_of(std::size_t support) const { return cfg_.score_function()(support); }

  WalkState start(const Pattern& x, const ExclusionSet& excl) {
    if (excl.contains(x)) throw std::invalid_argument("walk cannot start on an excluded pattern");
    return WalkState{x, explorer_.partition(x, excl), explorer_.support_count(x), 0, 0};
  }

  // One MH transition. The uniform for the accept test is always drawn so
  // trajectories do not depend on how alpha came out.
  void step(WalkState& s, const ExclusionSet& excl) {
    Proposal prop = propose(*s.partition, cfg_.proposal, rng_);
    auto py = explorer_.partition(prop.y, excl);
    const auto back = py->find(s.current.code());
    if (!back) {
      throw ReversibilityError("pattern " + s.current.code() + " is not a neighbor of its neighbor " +
                               prop.y.code());
    }
    // A reverse class with no mass (eta = 1 or rho in {0, 1} with that
    // class non-empty) makes the move one-way; rejecting it keeps balance.
    const double q_yx = proposal_masses(*py, cfg_.proposal).of(*back);
    const std::size_t sy = explorer_.support_count(prop.y);
    const ScoreFunction sf = cfg_.score_function();
    const double alpha = q_yx > 0 ? accept_prob(sf(s.support), sf(sy), prop.q_xy, q_yx, cfg_.budget, sf) : 0.0;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    if (uni(rng_) < alpha) {
      s.current = std::move(prop.y);
      s.partition = std::move(py);
      s.support = sy;
      ++s.accepted;
    }
    ++s.iteration;
  }

  // One private sample: start from a data-independent pattern, walk until
  // the Geweke test passes (or the cap is hit) and the state is reportable.
  SampledPattern sample(const ExclusionSet& excl) {
    WalkState s = start(starting_pattern(excl), excl);
    if (s.partition->empty()) return finish(s, true);

    GewekeMonitor monitor(cfg_.convergence);
    const std::size_t cap = cfg_.convergence.iteration_cap();
    bool certified = false;
    while (true) {
      step(s, excl);
      const double metrics[3] = {static_cast<double>(s.partition->size()),
                                 static_cast<double>(s.partition->frequent_count()),
                                 static_cast<double>(s.current.vertex_count())};
      const auto zs = monitor.push(metrics);
      if (trace_) write_trace(s.iteration, metrics, zs);
      if (!certified && monitor.converged()) certified = true;
      const bool reportable = cfg_.rules.admits_output(s.current.graph());
      if ((certified || s.iteration >= cap) && reportable) break;
      if (s.iteration >= 2 * cap) {
        throw std::runtime_error("walk found no pattern with at least " + std::to_string(cfg_.rules.v_min) +
                                 " vertices");
      }
    }
    return finish(s, certified);
  }

  // k sequential samples; each output is excluded from later rounds.
  std::vector<SampledPattern> mine_topk() {
    std::vector<SampledPattern> out;
    ExclusionSet excl;
    std::mt19937_64 noise = make_stream(cfg_.seed, 1);
    for (round_ = 0; round_ < cfg_.budget.k; ++round_) {
      SampledPattern sp = sample(excl);
      excl.insert(sp.pattern.code());
      if (cfg_.budget.eps2 > 0) {
        const std::size_t s[1] = {sp.true_support};
        sp.noisy_support = perturb_supports(s, cfg_.budget.eps2, cfg_.budget.k, noise)[0];
      }
      out.push_back(std::move(sp));
    }
    return out;
  }

 private:
  Pattern starting_pattern(const ExclusionSet& excl) {
    Pattern x = initial_pattern(walk_rules_, rng_);
    if (!excl.contains(x)) return x;
    const auto alts = splice_exclusions(x, generate_neighbors(x, walk_rules_).patterns(), excl, walk_rules_);
    if (alts.empty()) throw std::runtime_error("output space exhausted: every reachable pattern was reported");
    std::uniform_int_distribution<std::size_t> pick(0, alts.size() - 1);
    return alts[pick(rng_)];
  }

  SampledPattern finish(const WalkState& s, bool converged) {
    if (!cfg_.rules.admits_output(s.current.graph())) {
      throw std::runtime_error("no reportable pattern is reachable from the start");
    }
    return SampledPattern{s.current, s.support, std::nullopt, s.iteration, converged};
  }

  void write_trace(std::size_t it, const double (&metrics)[3],
                   const std::vector<std::optional<double>>& zs) {
    static constexpr const char* kNames[3] = {"neighbor_count", "frequent_neighbor_count", "vertex_count"};
    for (std::size_t m = 0; m < 3; ++m) {
      *trace_ << round_ << ',' << it << ',' << kNames[m] << ',' << metrics[m] << ',';
      if (zs[m]) *trace_ << *zs[m];
      *trace_ << '\n';
    }
  }

  const GraphDataset& data_;
  SamplerConfig cfg_;
  RuleSet walk_rules_;
  NeighborExplorer explorer_;
  std::mt19937_64 rng_;
  std::ostream* trace_ = nullptr;
  std::size_t round_ = 0;
};

// Number of vertex-labeled graphs with at most v_max vertices, ignoring
// isomorphism and connectivity; a crude bound on the output space size.
inline double crude_space_bound(const RuleSet& rules) {
  const double l = static_cast<double>(rules.labels.size());
  double total = 0;
  for (std::size_t n = 2; n <= rules.v_max; ++n) {
    const double pairs = static_cast<double>(n * (n - 1) / 2);
    total += std::pow(l, static_cast<double>(n)) * std::pow(2.0, pairs);
  }
  return std::max(total, 1.0);
}

}  // namespace dpgm
