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


// Laplace mechanism, exponential-mechanism weights and the analytic privacy
// and utility bounds of the sampler.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "dpgm/score.hpp"

namespace dpgm {

struct PrivacyBudget {
  double eps1 = 0.5;  // sampling
  double eps2 = 0.0;  // support perturbation, 0 to skip it
  std::size_t k = 15;

  double total() const { return eps1 + eps2; }

  void validate() const {
    if (!(eps1 > 0) || !std::isfinite(eps1)) throw std::invalid_argument("eps1 must be positive");
    if (!(eps2 >= 0) || !std::isfinite(eps2)) throw std::invalid_argument("eps2 must be non-negative");
  }

  // Coefficient of the score in the per-sample exponent.
  double exponent_scale(double delta_u) const {
    return eps1 / (2.0 * static_cast<double>(std::max<std::size_t>(k, 1)) * delta_u);
  }
};

// One Laplace(0, scale) draw by inverting the CDF at a single uniform.
template <class Rng>
double laplace_sample(double scale, Rng& rng) {
  if (!(scale > 0) || !std::isfinite(scale)) throw std::invalid_argument("laplace scale must be positive");
  std::uniform_real_distribution<double> uni(-0.5, 0.5);
  double u = uni(rng);
  while (u == -0.5) u = uni(rng);
  const double sign = u < 0 ? -1.0 : 1.0;
  return -scale * sign * std::log1p(-2.0 * std::fabs(u));
}

inline double laplace_pdf(double x, double scale) {
  return std::exp(-std::fabs(x) / scale) / (2.0 * scale);
}

// supports[i] + Lap(k / eps2), independently per entry.
template <class Rng>
std::vector<double> perturb_supports(std::span<const std::size_t> supports, double eps2,
                                     std::size_t k, Rng& rng) {
  if (!(eps2 > 0)) throw std::invalid_argument("eps2 must be positive to perturb supports");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const double scale = static_cast<double>(k) / eps2;
  std::vector<double> out;
  out.reserve(supports.size());
  for (std::size_t s : supports) out.push_back(static_cast<double>(s) + laplace_sample(scale, rng));
  return out;
}

namespace detail {
inline void check_gamma(double gamma) {
  if (!(gamma > 0 && gamma < 1)) throw std::invalid_argument("gamma must lie in (0, 1)");
}
}  // namespace detail

// With probability at least 1 - gamma every sampled pattern has support
// above f - beta, beta = (2k/eps1) ln(k M / gamma).
inline double beta_sampling_bound(std::size_t k, double eps1, double gamma, double m_upper) {
  detail::check_gamma(gamma);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (!(eps1 > 0)) throw std::invalid_argument("eps1 must be positive");
  if (!(m_upper >= 1)) throw std::invalid_argument("output space bound must be at least 1");
  const double kd = static_cast<double>(k);
  return 2.0 * kd / eps1 * std::log(kd * m_upper / gamma);
}

// With probability at least 1 - gamma a noisy support is within beta of the
// true one, beta = (k/eps2) ln(1/gamma).
inline double beta_noise_bound(std::size_t k, double eps2, double gamma) {
  detail::check_gamma(gamma);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (!(eps2 > 0)) throw std::invalid_argument("eps2 must be positive");
  return static_cast<double>(k) / eps2 * std::log(1.0 / gamma);
}

// delta of the (eps, delta) guarantee when each chain is within total
// variation theta of its stationary law.
inline double approx_delta(double theta, double eps1, std::size_t k) {
  if (!(theta >= 0)) throw std::invalid_argument("theta must be non-negative");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  return theta * (1.0 + std::exp(eps1 / static_cast<double>(k)));
}

// pi(x) proportional to exp(eps1 u(x) / (2 k delta_u)), normalized in the log
// domain.
inline std::vector<double> exp_mechanism_weights(std::span<const double> scores, double eps1,
                                                 std::size_t k, double delta_u = 1.0) {
  if (scores.empty()) throw std::invalid_argument("empty output space");
  if (!(delta_u > 0)) throw std::invalid_argument("sensitivity must be positive");
  const double c = PrivacyBudget{eps1, 0.0, k}.exponent_scale(delta_u);
  std::vector<double> w(scores.size());
  double top = -INFINITY;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    w[i] = c * scores[i];
    top = std::max(top, w[i]);
  }
  double sum = 0;
  for (double& x : w) {
    x = std::exp(x - top);
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace dpgm
