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

// Dense reference quantities. These enumerate the full state and are meant
// for tests and small instances, not for the training path.

#include <Eigen/Dense>

#include "qfs/circuit.hpp"
#include "qfs/objective.hpp"
#include "qfs/statevector.hpp"

namespace qfs {

inline constexpr double kOracleStep = 1e-5;

/// sum_j p_j(theta) f(x_j) from a dense simulation.
double dense_loss(const Circuit& circuit, const ParamVector& theta,
                  const BlackBoxObjective& objective);

/// Central differences of dense_loss, one coordinate at a time.
Eigen::VectorXd exact_gradient(const Circuit& circuit, const ParamVector& theta,
                               const BlackBoxObjective& objective, double step = kOracleStep);

/// 4 Re(<d_p psi|d_q psi> - <d_p psi|psi><psi|d_q psi>) with the state
/// derivatives taken by central differences. Symmetrized.
Eigen::MatrixXd exact_qfi(const Circuit& circuit, const ParamVector& theta,
                          double step = kOracleStep);

/// -2 times the Hessian of x -> |<psi(theta)|psi(theta + x)>|^2 at x = 0.
/// Shares nothing with exact_qfi beyond run_sv.
Eigen::MatrixXd fidelity_hessian_qfi(const Circuit& circuit, const ParamVector& theta,
                                     double step = kOracleStep);

}  // namespace qfs
