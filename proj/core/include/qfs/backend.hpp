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

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qfs/circuit.hpp"
#include "qfs/mps.hpp"
#include "qfs/rng.hpp"
#include "qfs/sample_set.hpp"
#include "qfs/statevector.hpp"

namespace qfs {

enum class BackendKind { statevector, mps };

BackendKind parse_backend_kind(std::string_view name);
std::string to_string(BackendKind kind);

/// Simulator used by the estimator. Implementations are stateless and may
/// be shared across threads.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual BackendKind kind() const = 0;

  virtual SampleSet sample(const BoundCircuit& bound, std::size_t shots, Rng& rng) const = 0;

  /// Exact p_j over all 2^n basis states; only for small n.
  virtual std::vector<double> probabilities(const BoundCircuit& bound) const = 0;

  /// |<psi(b)|psi(a)>|^2 computed exactly from the two forward circuits.
  virtual double overlap(const BoundCircuit& a, const BoundCircuit& b) const = 0;
};

class StatevectorBackend final : public Backend {
 public:
  explicit StatevectorBackend(SvOptions options = {}) : options_(options) {}

  BackendKind kind() const override { return BackendKind::statevector; }
  SampleSet sample(const BoundCircuit& bound, std::size_t shots, Rng& rng) const override;
  std::vector<double> probabilities(const BoundCircuit& bound) const override;
  double overlap(const BoundCircuit& a, const BoundCircuit& b) const override;

 private:
  SvOptions options_;
};

class MpsBackend final : public Backend {
 public:
  explicit MpsBackend(MpsOptions options = {}) : options_(options) {}

  BackendKind kind() const override { return BackendKind::mps; }
  SampleSet sample(const BoundCircuit& bound, std::size_t shots, Rng& rng) const override;
  std::vector<double> probabilities(const BoundCircuit& bound) const override;
  double overlap(const BoundCircuit& a, const BoundCircuit& b) const override;

 private:
  MpsOptions options_;
};

std::unique_ptr<Backend> make_backend(BackendKind kind);

}  // namespace qfs
