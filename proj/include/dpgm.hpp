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

#include "dpgm/baseline.hpp"
#include "dpgm/canonical.hpp"
#include "dpgm/diagnostics.hpp"
#include "dpgm/explore.hpp"
#include "dpgm/graph.hpp"
#include "dpgm/harness.hpp"
#include "dpgm/io.hpp"
#include "dpgm/isomorphism.hpp"
#include "dpgm/label.hpp"
#include "dpgm/neighborhood.hpp"
#include "dpgm/privacy.hpp"
#include "dpgm/sampler.hpp"
#include "dpgm/score.hpp"
