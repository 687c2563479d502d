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


// Small datasets shared by the unit and acceptance tests.

#pragma once

#include <string_view>

namespace fixtures {

// Five graphs over {A, B}.
inline constexpr std::string_view kFive = R"(t # 0
v 0 A
v 1 B
v 2 A
e 0 1
e 1 2
t # 1
v 0 A
v 1 A
v 2 B
e 0 1
e 1 2
e 0 2
t # 2
v 0 B
v 1 B
e 0 1
t # 3
v 0 A
v 1 B
v 2 B
v 3 A
e 0 1
e 1 2
e 2 3
t # 4
v 0 A
v 1 A
e 0 1
)";

// Graphs that may be added to it.
inline constexpr std::string_view kPool = R"(t # 0
v 0 A
v 1 A
v 2 A
e 0 1
e 1 2
e 0 2
t # 1
v 0 B
v 1 A
v 2 B
e 0 1
e 1 2
t # 2
v 0 A
v 1 B
e 0 1
)";

}  // namespace fixtures
