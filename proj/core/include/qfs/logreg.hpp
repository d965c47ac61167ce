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

#include <Eigen/Dense>

namespace qfs {

struct LogRegConfig {
  double C = 1.0;  // inverse L2 strength; the intercept is not penalized
  double tolerance = 1e-6;
  std::size_t max_iterations = 1000;
};

struct LogRegModel {
  Eigen::VectorXd weights;
  double intercept = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;

  std::size_t dimension() const { return static_cast<std::size_t>(weights.size()); }
  Eigen::VectorXd predict_proba(const Eigen::Ref<const Eigen::MatrixXd>& X) const;
};

/// L2-regularized logistic regression fitted by damped Newton iterations
/// from the zero vector. X may have zero columns (intercept-only model).
///
/// Minimizes sum_i CE(y_i, p_i) + ||w||^2 / (2C). Stops when the gradient
/// norm of that objective is <= tolerance or after max_iterations; the
/// reached norm is reported either way.
LogRegModel train_logreg(const Eigen::Ref<const Eigen::MatrixXd>& X,
                         const Eigen::Ref<const Eigen::VectorXd>& y,
                         const LogRegConfig& config = {});

inline constexpr double kProbabilityClip = 1e-15;

/// Mean binary cross-entropy with probabilities clipped to [1e-15, 1 - 1e-15].
double log_loss(const Eigen::Ref<const Eigen::VectorXd>& probabilities,
                const Eigen::Ref<const Eigen::VectorXd>& y);
double log_loss(const LogRegModel& model, const Eigen::Ref<const Eigen::MatrixXd>& X,
                const Eigen::Ref<const Eigen::VectorXd>& y);

/// Fraction of rows where (p >= 0.5) matches the label; p == 0.5 predicts 1.
double accuracy(const LogRegModel& model, const Eigen::Ref<const Eigen::MatrixXd>& X,
                const Eigen::Ref<const Eigen::VectorXd>& y);

}  // namespace qfs
