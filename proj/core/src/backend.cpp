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

#include "qfs/backend.hpp"

#include <stdexcept>

namespace qfs {

BackendKind parse_backend_kind(std::string_view name) {
  if (name == "statevector" || name == "sv") return BackendKind::statevector;
  if (name == "mps") return BackendKind::mps;
  throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

std::string to_string(BackendKind kind) {
  return kind == BackendKind::statevector ? "statevector" : "mps";
}

SampleSet StatevectorBackend::sample(const BoundCircuit& bound, std::size_t shots, Rng& rng) const {
  return qfs::sample(run_sv(bound, options_), shots, rng);
}

std::vector<double> StatevectorBackend::probabilities(const BoundCircuit& bound) const {
  return run_sv(bound, options_).probabilities();
}

double StatevectorBackend::overlap(const BoundCircuit& a, const BoundCircuit& b) const {
  return overlap_exact(run_sv(b, options_), run_sv(a, options_));
}

SampleSet MpsBackend::sample(const BoundCircuit& bound, std::size_t shots, Rng& rng) const {
  return mps_sample(run_mps(bound, options_), shots, rng);
}

std::vector<double> MpsBackend::probabilities(const BoundCircuit& bound) const {
  return run_mps(bound, options_).to_statevector().probabilities();
}

double MpsBackend::overlap(const BoundCircuit& a, const BoundCircuit& b) const {
  return mps_overlap(run_mps(b, options_), run_mps(a, options_));
}

std::unique_ptr<Backend> make_backend(BackendKind kind) {
  if (kind == BackendKind::statevector) return std::make_unique<StatevectorBackend>();
  return std::make_unique<MpsBackend>();
}

}  // namespace qfs
