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


// Pattern utility functions for the exponential mechanism.

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dpgm {

enum class ScoreKind { linear, plateau };

// linear:  u(x) = support(x)
// plateau: u(x) = min(support(x), f)
// Both change by at most 1 when one graph is added or removed.
struct ScoreFunction {
  ScoreKind kind = ScoreKind::linear;
  std::size_t f = 1;
  double delta_u = 1.0;

  double operator()(std::size_t support) const {
    if (kind == ScoreKind::plateau) return static_cast<double>(std::min(support, f));
    return static_cast<double>(support);
  }
};

inline std::string_view to_string(ScoreKind k) {
  return k == ScoreKind::plateau ? "plateau" : "linear";
}

inline ScoreKind parse_score_kind(std::string_view s) {
  if (s == "linear") return ScoreKind::linear;
  if (s == "plateau") return ScoreKind::plateau;
  throw std::invalid_argument("unknown score function '" + std::string(s) + "'");
}

}  // namespace dpgm
