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

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dpgm {

// Labels are tokens matching [A-Za-z0-9_]+.
inline bool is_label_token(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

namespace detail {

// Process-wide intern table. Names are stored in a deque so the views handed
// out stay valid while the table grows.
class LabelPool {
 public:
  static LabelPool& instance() {
    static LabelPool pool;
    return pool;
  }

  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(std::string(name)); it != ids_.end()) {
        return it->second;
      }
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] =
        ids_.emplace(std::string(name), static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.emplace_back(name);
    return it->second;
  }

  std::string_view name(std::uint32_t id) const {
    std::shared_lock lock(mutex_);
    return names_.at(id);
  }

 private:
  LabelPool() { names_.emplace_back(); ids_.emplace(std::string(), 0); }

  mutable std::shared_mutex mutex_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

}  // namespace detail

// Interned vertex label. Comparison operators order by intern id, which is
// fast but arbitrary; use LabelNameLess wherever the order must be stable
// across processes.
class Label {
 public:
  constexpr Label() = default;

  static Label of(std::string_view name) {
    if (!is_label_token(name)) {
      throw std::invalid_argument("invalid label token '" + std::string(name) +
                                  "'");
    }
    return Label(detail::LabelPool::instance().intern(name));
  }

  std::string_view name() const {
    return detail::LabelPool::instance().name(id_);
  }
  std::uint32_t id() const { return id_; }

  friend constexpr bool operator==(Label, Label) = default;
  friend constexpr auto operator<=>(Label, Label) = default;

 private:
  constexpr explicit Label(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

struct LabelNameLess {
  bool operator()(Label a, Label b) const { return a.name() < b.name(); }
};

inline std::vector<Label> sorted_by_name(std::vector<Label> labels) {
  std::sort(labels.begin(), labels.end(), LabelNameLess{});
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

}  // namespace dpgm

template <>
struct std::hash<dpgm::Label> {
  std::size_t operator()(dpgm::Label l) const noexcept {
    return std::hash<std::uint32_t>{}(l.id());
  }
};
