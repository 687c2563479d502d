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


// Transition kernel of the walk assembled from propose/accept_prob over an
// enumerated space, for detailed-balance and stationarity checks.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "dpgm/baseline.hpp"
#include "dpgm/explore.hpp"
#include "dpgm/sampler.hpp"

namespace kernel {

struct Kernel {
  std::vector<dpgm::Pattern> space;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<double>> p;  // p[i][j], including the stay mass on the diagonal
  std::vector<std::size_t> supports;
};

inline Kernel assemble(const dpgm::GraphDataset& d, const dpgm::SamplerConfig& cfg) {
  Kernel k;
  const dpgm::RuleSet walk = cfg.rules.walk_rules();
  k.space = dpgm::enumerate_space(walk);
  for (std::size_t i = 0; i < k.space.size(); ++i) k.index[k.space[i].code()] = i;
  dpgm::NeighborExplorer ex(d, walk, cfg.f, dpgm::ExploreMethod::naive);
  const dpgm::ExclusionSet none;
  const dpgm::ScoreFunction sf = cfg.score_function();
  const std::size_t n = k.space.size();
  k.p.assign(n, std::vector<double>(n, 0.0));
  for (const auto& x : k.space) k.supports.push_back(ex.support_count(x));
  for (std::size_t i = 0; i < n; ++i) {
    const auto px = ex.partition(k.space[i], none);
    if (px->empty()) {
      k.p[i][i] = 1.0;
      continue;
    }
    double out = 0;
    for (auto c : {dpgm::NeighborClass::frequent_sub, dpgm::NeighborClass::frequent_super,
                   dpgm::NeighborClass::infrequent}) {
      for (const auto& y : px->members(c)) {
        const std::size_t j = k.index.at(y.code());
        const double q_xy = dpgm::proposal_mass(*px, y.code(), cfg.proposal);
        if (q_xy == 0) continue;
        const double q_yx = dpgm::proposal_mass(*ex.partition(y, none), k.space[i].code(), cfg.proposal);
        const double a =
            q_yx > 0 ? dpgm::accept_prob(sf(k.supports[i]), sf(k.supports[j]), q_xy, q_yx, cfg.budget, sf) : 0.0;
        k.p[i][j] = q_xy * a;
        out += k.p[i][j];
      }
    }
    k.p[i][i] = 1.0 - out;
  }
  return k;
}

inline std::vector<double> target(const Kernel& k, const dpgm::GraphDataset& d, const dpgm::SamplerConfig& cfg) {
  return dpgm::target_distribution(k.space, d, cfg.budget, cfg.score_function());
}

// Largest |pi(x) P(x,y) - pi(y) P(y,x)|.
inline double balance_residual(const Kernel& k, const std::vector<double>& pi) {
  double worst = 0;
  for (std::size_t i = 0; i < k.space.size(); ++i) {
    for (std::size_t j = 0; j < k.space.size(); ++j) {
      worst = std::max(worst, std::abs(pi[i] * k.p[i][j] - pi[j] * k.p[j][i]));
    }
  }
  return worst;
}

}  // namespace kernel
