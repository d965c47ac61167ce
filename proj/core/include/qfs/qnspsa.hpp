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
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfs/backend.hpp"
#include "qfs/circuit.hpp"
#include "qfs/estimator.hpp"
#include "qfs/objective.hpp"
#include "qfs/rng.hpp"
#include "qfs/sample_set.hpp"

namespace qfs {

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// value(k) = base / (k + 1 + offset)^exponent. exponent 0 is a constant.
struct Schedule {
  double base = 0.01;
  double offset = 0.0;
  double exponent = 0.0;

  double at(std::size_t iteration) const;
};

struct OptimizerConfig {
  std::size_t iterations = 300;
  std::size_t shots = 1024;
  Schedule perturbation{0.01};
  Schedule learning_rate{0.01};
  std::size_t resamples = 1;
  double regularization = 0.01;
  bool blocking = true;
  double blocking_tolerance = 2.0;  // multiples of sigma_0
  std::size_t sigma_repeats = 25;
  std::uint64_t seed = 0;
  std::size_t final_shots = 10000;
  EstimationMode loss_mode = EstimationMode::sampled;
  EstimationMode fidelity_mode = EstimationMode::sampled;
  bool record_timing = false;

  void validate() const;  // throws std::invalid_argument
};

struct TraceRow {
  std::size_t iteration = 0;
  double candidate_loss = 0.0;
  bool accepted = false;
  double current_loss = 0.0;
  std::optional<double> wall_ms;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct OptimizerState {
  ParamVector theta;
  std::size_t iteration = 0;
  Eigen::MatrixXd qfi_average;  // uniform average over all completed steps
  double current_loss = 0.0;
  double initial_loss = 0.0;
  double sigma0 = 0.0;
  std::vector<TraceRow> trace;
};

struct TrainingResult {
  OptimizerState state;
  SampleSet final_samples{0};
  OptimizerConfig config;
  std::uint64_t seed = 0;
};

/// Two loss estimates at theta +- eps Delta, Delta uniform on {-1, +1}^m.
Eigen::VectorXd spsa_gradient(const Estimator& est, const Circuit& circuit,
                              const ParamVector& theta, const BlackBoxObjective& objective,
                              double epsilon, Rng& rng);

/// Second-order SPSA estimate of the QFI from four fidelities. Symmetric.
Eigen::MatrixXd spsa_qfi(const Estimator& est, const Circuit& circuit, const ParamVector& theta,
                         double epsilon, Rng& rng);

/// Eigenvalues clamped from below at beta.
Eigen::MatrixXd regularize_qfi(const Eigen::MatrixXd& average, double beta);

/// theta, sigma_0 and the starting loss. Deterministic in config.seed.
OptimizerState initial_state(const OptimizerConfig& config, const Estimator& est,
                             const Circuit& circuit, const BlackBoxObjective& objective);

/// One natural-gradient step with blocking. Randomness is derived from
/// (config.seed, state.iteration) so a restored state continues identically.
OptimizerState qnspsa_step(const OptimizerState& state, const OptimizerConfig& config,
                           const Estimator& est, const Circuit& circuit,
                           const BlackBoxObjective& objective);

struct RunHooks {
  std::function<void(const OptimizerState&)> on_step;
};

TrainingResult run(const OptimizerConfig& config, const Circuit& circuit,
                   const BlackBoxObjective& objective, const Backend& backend,
                   const RunHooks& hooks = {}, std::optional<OptimizerState> resume = std::nullopt);

// Snapshot and trace IO.
std::string state_to_json(const OptimizerState& state);
OptimizerState state_from_json(const std::string& text);

void write_trace_csv(const std::vector<TraceRow>& trace, std::ostream& os);

}  // namespace qfs
