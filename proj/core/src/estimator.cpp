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

#include "qfs/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace qfs {

LossEstimate estimate_loss(const Backend& backend, const Circuit& circuit, const ParamVector& theta,
                           const BlackBoxObjective& objective, std::size_t shots, Rng& rng) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  if (objective.dimension() != circuit.n_qubits()) {
    throw std::invalid_argument("objective dimension does not match qubit count");
  }
  LossEstimate est;
  est.samples = backend.sample(bind(circuit, theta), shots, rng);
  est.shots = shots;
  double total = 0.0;
  for (const auto& [word, count] : est.samples.counts()) {
    total += static_cast<double>(count) * objective(Bitstring(word, circuit.n_qubits()));
  }
  est.value = total / static_cast<double>(shots);
  return est;
}

double exact_loss(const Backend& backend, const Circuit& circuit, const ParamVector& theta,
                  const BlackBoxObjective& objective) {
  if (objective.dimension() != circuit.n_qubits()) {
    throw std::invalid_argument("objective dimension does not match qubit count");
  }
  const std::vector<double> p = backend.probabilities(bind(circuit, theta));
  double total = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0.0) continue;
    total += p[j] * objective(Bitstring(j, circuit.n_qubits()));
  }
  return total;
}

double estimate_fidelity(const Backend& backend, const Circuit& circuit, const ParamVector& theta_1,
                         const ParamVector& theta_2, std::size_t shots, Rng& rng,
                         EstimationMode mode) {
  const BoundCircuit a = bind(circuit, theta_1);
  const BoundCircuit b = bind(circuit, theta_2);
  if (mode == EstimationMode::exact) return backend.overlap(a, b);
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  const SampleSet s = backend.sample(compose_uncompute(a, b), shots, rng);
  return s.frequency(0);
}

double hoeffding_epsilon(double f_min, double f_max, std::size_t shots, double gamma) {
  if (!(f_max > f_min)) throw std::invalid_argument("hoeffding_epsilon: need f_max > f_min");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("hoeffding_epsilon: gamma in (0,1)");
  if (shots == 0) throw std::invalid_argument("hoeffding_epsilon: shots must be positive");
  return (f_max - f_min) * std::sqrt(std::log(2.0 / gamma) / (2.0 * static_cast<double>(shots)));
}

Estimator::Estimator(const Backend& backend, std::size_t shots, EstimationMode loss_mode,
                     EstimationMode fidelity_mode)
    : backend_(&backend), shots_(shots), loss_mode_(loss_mode), fidelity_mode_(fidelity_mode) {
  if (shots == 0 && (loss_mode == EstimationMode::sampled ||
                     fidelity_mode == EstimationMode::sampled)) {
    throw std::invalid_argument("sampled estimation needs shots >= 1");
  }
}

double Estimator::loss(const Circuit& circuit, const ParamVector& theta,
                       const BlackBoxObjective& objective, Rng& rng) const {
  if (loss_mode_ == EstimationMode::exact) return exact_loss(*backend_, circuit, theta, objective);
  return estimate_loss(*backend_, circuit, theta, objective, shots_, rng).value;
}

LossEstimate Estimator::loss_estimate(const Circuit& circuit, const ParamVector& theta,
                                      const BlackBoxObjective& objective, Rng& rng) const {
  if (loss_mode_ == EstimationMode::exact) {
    LossEstimate est;
    est.value = exact_loss(*backend_, circuit, theta, objective);
    return est;
  }
  return estimate_loss(*backend_, circuit, theta, objective, shots_, rng);
}

double Estimator::fidelity(const Circuit& circuit, const ParamVector& theta_1,
                           const ParamVector& theta_2, Rng& rng) const {
  return estimate_fidelity(*backend_, circuit, theta_1, theta_2, shots_, rng, fidelity_mode_);
}

}  // namespace qfs
