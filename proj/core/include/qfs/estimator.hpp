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

#include "qfs/backend.hpp"
#include "qfs/circuit.hpp"
#include "qfs/objective.hpp"
#include "qfs/rng.hpp"
#include "qfs/sample_set.hpp"

namespace qfs {

/// sampled: shot-based estimates. exact: probabilities from the backend
/// (loss) or exact overlaps (fidelity); used by tests and oracle runs.
enum class EstimationMode { sampled, exact };

struct LossEstimate {
  double value = 0.0;
  std::size_t shots = 0;  // 0 in exact mode
  SampleSet samples{0};   // empty in exact mode
};

/// Frequency-weighted mean of f over the sampled support. Each distinct
/// bitstring is scored once through the objective's cache.
LossEstimate estimate_loss(const Backend& backend, const Circuit& circuit, const ParamVector& theta,
                           const BlackBoxObjective& objective, std::size_t shots, Rng& rng);

/// sum_j p_j(theta) f(x_j), enumerating the dense distribution.
double exact_loss(const Backend& backend, const Circuit& circuit, const ParamVector& theta,
                  const BlackBoxObjective& objective);

/// |<psi(theta_2)|psi(theta_1)>|^2. Sampled mode runs U^dagger(theta_2)
/// U(theta_1) and returns the fraction of all-zeros outcomes.
double estimate_fidelity(const Backend& backend, const Circuit& circuit, const ParamVector& theta_1,
                         const ParamVector& theta_2, std::size_t shots, Rng& rng,
                         EstimationMode mode);

/// Half-width eps such that P(|L - L~| >= eps) <= gamma under Hoeffding:
/// eps = (f_max - f_min) sqrt(ln(2 / gamma) / (2 shots)).
double hoeffding_epsilon(double f_min, double f_max, std::size_t shots, double gamma);

/// Loss and fidelity estimates bound to one backend and one shot budget.
class Estimator {
 public:
  Estimator(const Backend& backend, std::size_t shots,
            EstimationMode loss_mode = EstimationMode::sampled,
            EstimationMode fidelity_mode = EstimationMode::sampled);

  double loss(const Circuit& circuit, const ParamVector& theta, const BlackBoxObjective& objective,
              Rng& rng) const;
  LossEstimate loss_estimate(const Circuit& circuit, const ParamVector& theta,
                             const BlackBoxObjective& objective, Rng& rng) const;
  double fidelity(const Circuit& circuit, const ParamVector& theta_1, const ParamVector& theta_2,
                  Rng& rng) const;

  const Backend& backend() const { return *backend_; }
  std::size_t shots() const { return shots_; }
  EstimationMode loss_mode() const { return loss_mode_; }
  EstimationMode fidelity_mode() const { return fidelity_mode_; }

 private:
  const Backend* backend_;
  std::size_t shots_;
  EstimationMode loss_mode_;
  EstimationMode fidelity_mode_;
};

}  // namespace qfs
