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

// Geweke convergence diagnostic over scalar chain traces.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dpgm {

struct ConvergencePolicy {
  double first_frac = 0.1;
  double last_frac = 0.5;
  std::size_t window = 20;
  double z_bound = 1.0;
  std::size_t min_iterations = 100;
  // Per-chain step cap; 0 means 50 * window.
  std::size_t max_iterations = 0;

  std::size_t iteration_cap() const { return max_iterations ? max_iterations : 50 * window; }

  void validate() const {
    if (!(first_frac > 0) || !(last_frac > 0) || first_frac + last_frac > 1.0) {
      throw std::invalid_argument("window fractions must be positive and sum to at most 1");
    }
    if (window < 1) throw std::invalid_argument("convergence window must be at least 1");
    if (!(z_bound > 0)) throw std::invalid_argument("z bound must be positive");
  }
};

// Returned for zero-variance windows with different means.
inline constexpr double kDivergedZ = std::numeric_limits<double>::infinity();

namespace detail {

struct Moments {
  double mean = 0;
  double var = 0;  // population variance
};

inline Moments moments(std::span<const double> xs) {
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
  m.var /= static_cast<double>(xs.size());
  return m;
}

}  // namespace detail

// Z for two explicit windows.
inline double geweke_z(std::span<const double> first, std::span<const double> last) {
  if (first.empty() || last.empty()) throw std::invalid_argument("empty Geweke window");
  const auto a = detail::moments(first);
  const auto b = detail::moments(last);
  const double s = a.var + b.var;
  if (s == 0.0) return a.mean == b.mean ? 0.0 : kDivergedZ;
  return (a.mean - b.mean) / std::sqrt(s);
}

// Z for the first first_frac and last last_frac of the series; nullopt when
// the series is shorter than min_iterations or a window would be empty.
inline std::optional<double> geweke_z(std::span<const double> values, const ConvergencePolicy& p) {
  const std::size_t n = values.size();
  if (n == 0 || n < p.min_iterations) return std::nullopt;
  const auto n1 = static_cast<std::size_t>(std::floor(p.first_frac * static_cast<double>(n)));
  const auto n2 = static_cast<std::size_t>(std::floor(p.last_frac * static_cast<double>(n)));
  if (n1 == 0 || n2 == 0) return std::nullopt;
  return geweke_z(values.first(n1), values.last(n2));
}

struct MetricTrace {
  std::string name;
  std::vector<double> values;
};

inline std::vector<MetricTrace> walk_traces() {
  return {{"neighbor_count", {}}, {"frequent_neighbor_count", {}}, {"vertex_count", {}}};
}

// True iff every trace had |Z| <= z_bound at each of its last `window`
// lengths. All traces must have the same length.
inline bool converged(const std::vector<MetricTrace>& traces, const ConvergencePolicy& p) {
  if (traces.empty()) return false;
  const std::size_t n = traces.front().values.size();
  if (n < p.window) return false;
  for (const MetricTrace& t : traces) {
    if (t.values.size() != n) throw std::invalid_argument("trace lengths differ");
    const std::span<const double> all(t.values);
    for (std::size_t len = n - p.window + 1; len <= n; ++len) {
      const auto z = geweke_z(all.first(len), p);
      if (!z || !(std::fabs(*z) <= p.z_bound)) return false;
    }
  }
  return true;
}

// Incremental form of converged() for a growing chain: feed one sample per
// metric per iteration.
class GewekeMonitor {
 public:
  explicit GewekeMonitor(ConvergencePolicy p, std::size_t metrics = 3)
      : policy_(p), series_(metrics) {
    policy_.validate();
  }

  // Appends one value per metric and returns the Z values for this length
  // (nullopt where not yet defined).
  std::vector<std::optional<double>> push(std::span<const double> sample) {
    if (sample.size() != series_.size()) throw std::invalid_argument("metric count mismatch");
    std::vector<std::optional<double>> zs(series_.size());
    bool all_within = true;
    for (std::size_t m = 0; m < series_.size(); ++m) {
      series_[m].push_back(sample[m]);
      zs[m] = geweke_z(series_[m], policy_);
      if (!zs[m] || !(std::fabs(*zs[m]) <= policy_.z_bound)) all_within = false;
    }
    streak_ = all_within ? streak_ + 1 : 0;
    return zs;
  }

  bool converged() const { return streak_ >= policy_.window; }
  std::size_t length() const { return series_.empty() ? 0 : series_.front().size(); }
  const ConvergencePolicy& policy() const { return policy_; }

 private:
  ConvergencePolicy policy_;
  std::vector<std::vector<double>> series_;
  std::size_t streak_ = 0;
};

}  // namespace dpgm
