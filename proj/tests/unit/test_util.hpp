// Copyright 2026 The qfs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>

#include "qfs/circuit.hpp"
#include "qfs/rng.hpp"

namespace qfs::testing {

inline ParamVector random_theta(std::size_t m, Rng& rng) {
  ParamVector t(static_cast<Eigen::Index>(m));
  for (Eigen::Index k = 0; k < t.size(); ++k) t(k) = (2.0 * rng.uniform() - 1.0) * std::numbers::pi;
  return t;
}

}  // namespace qfs::testing
