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

#include "qfs/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qfs {

namespace {

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_dimensions(const LogRegModel& model, Eigen::Index cols, Eigen::Index rows,
                      Eigen::Index labels) {
  if (static_cast<Eigen::Index>(model.dimension()) != cols) {
    throw std::invalid_argument("model has " + std::to_string(model.dimension()) +
                                " weights but X has " + std::to_string(cols) + " columns");
  }
  if (rows != labels) throw std::invalid_argument("X rows and label count differ");
}

// Penalized objective at (w, b) given the linear predictor z.
double objective(const Eigen::VectorXd& z, const Eigen::Ref<const Eigen::VectorXd>& y,
                 const Eigen::VectorXd& w, double inv_c) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) total += softplus(z[i]) - y[i] * z[i];
  return total + 0.5 * inv_c * w.squaredNorm();
}

double gradient_norm(const Eigen::Ref<const Eigen::MatrixXd>& X,
                     const Eigen::Ref<const Eigen::VectorXd>& y, const Eigen::VectorXd& z,
                     const Eigen::VectorXd& w, double inv_c) {
  const Eigen::VectorXd r = z.unaryExpr([](double v) { return sigmoid(v); }) - y;
  const double gb = r.sum();
  return std::sqrt((X.transpose() * r + inv_c * w).squaredNorm() + gb * gb);
}

}  // namespace

Eigen::VectorXd LogRegModel::predict_proba(const Eigen::Ref<const Eigen::MatrixXd>& X) const {
  if (X.cols() != weights.size()) throw std::invalid_argument("model/X dimension mismatch");
  Eigen::VectorXd z = X * weights;
  z.array() += intercept;
  return z.unaryExpr([](double v) { return sigmoid(v); });
}

LogRegModel train_logreg(const Eigen::Ref<const Eigen::MatrixXd>& X,
                         const Eigen::Ref<const Eigen::VectorXd>& y, const LogRegConfig& config) {
  const Eigen::Index n = X.rows();
  const Eigen::Index k = X.cols();
  if (n < 1) throw std::invalid_argument("logistic regression needs at least one row");
  if (y.size() != n) throw std::invalid_argument("X rows and label count differ");
  if (!X.allFinite() || !y.allFinite()) throw std::invalid_argument("non-finite training input");
  if (config.C <= 0) throw std::invalid_argument("C must be positive");

  const double inv_c = 1.0 / config.C;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(k);
  double b = 0.0;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd p(n);
  Eigen::VectorXd s(n);
  Eigen::VectorXd grad(k + 1);
  Eigen::MatrixXd hess(k + 1, k + 1);
  Eigen::MatrixXd weighted(n, k);
  double f = objective(z, y, w, inv_c);

  LogRegModel model;
  for (std::size_t it = 0;; ++it) {
    for (Eigen::Index i = 0; i < n; ++i) {
      p[i] = sigmoid(z[i]);
      s[i] = p[i] * (1.0 - p[i]);
    }
    const Eigen::VectorXd r = p - y;
    grad.head(k).noalias() = X.transpose() * r;
    grad.head(k) += inv_c * w;
    grad[k] = r.sum();
    model.gradient_norm = grad.norm();
    model.iterations = it;
    if (model.gradient_norm <= config.tolerance) {
      model.converged = true;
      break;
    }
    if (it >= config.max_iterations) break;

    weighted = X.array().colwise() * s.array();
    hess.topLeftCorner(k, k).noalias() = X.transpose() * weighted;
    hess.topLeftCorner(k, k).diagonal().array() += inv_c;
    hess.col(k).head(k) = weighted.colwise().sum().transpose();
    hess.row(k).head(k) = hess.col(k).head(k).transpose();
    hess(k, k) = std::max(s.sum(), 1e-300);

    // Jacobi scaling: raw numeric columns sit orders of magnitude apart.
    const Eigen::VectorXd d = hess.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd scaled = d.asDiagonal() * hess * d.asDiagonal();
    const Eigen::VectorXd rhs = d.cwiseProduct(grad);
    Eigen::VectorXd step;
    Eigen::LLT<Eigen::MatrixXd> llt(scaled);
    if (llt.info() == Eigen::Success) {
      step = d.cwiseProduct(llt.solve(rhs));
    } else {
      step = d.cwiseProduct(scaled.ldlt().solve(rhs));
    }

    // Backtracking (Armijo) on the penalized objective. Close to the optimum
    // the decrease drops below the rounding of f; a full step that still
    // shrinks the gradient is taken then.
    const double slope = grad.dot(step);
    const double noise = 1e-13 * (1.0 + std::abs(f));
    double t = 1.0;
    Eigen::VectorXd w_new;
    double b_new = b;
    Eigen::VectorXd z_new;
    double f_new = f;
    bool moved = false;
    while (t > 1e-12) {
      w_new = w - t * step.head(k);
      b_new = b - t * step[k];
      z_new = X * w_new;
      z_new.array() += b_new;
      f_new = objective(z_new, y, w_new, inv_c);
      if (f_new <= f - 1e-4 * t * slope) {
        moved = true;
        break;
      }
      if (t == 1.0 && f_new <= f + noise &&
          gradient_norm(X, y, z_new, w_new, inv_c) < model.gradient_norm) {
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      // No further decrease is representable; report the reached norm.
      break;
    }
    w = std::move(w_new);
    b = b_new;
    z = std::move(z_new);
    f = f_new;
  }
  model.weights = std::move(w);
  model.intercept = b;
  return model;
}

double log_loss(const Eigen::Ref<const Eigen::VectorXd>& probabilities,
                const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (probabilities.size() != y.size() || y.size() == 0) {
    throw std::invalid_argument("log_loss: size mismatch or empty input");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double p = std::clamp(probabilities[i], kProbabilityClip, 1.0 - kProbabilityClip);
    total += y[i] * std::log(p) + (1.0 - y[i]) * std::log(1.0 - p);
  }
  return -total / static_cast<double>(y.size());
}

double log_loss(const LogRegModel& model, const Eigen::Ref<const Eigen::MatrixXd>& X,
                const Eigen::Ref<const Eigen::VectorXd>& y) {
  check_dimensions(model, X.cols(), X.rows(), y.size());
  return log_loss(model.predict_proba(X), y);
}

double accuracy(const LogRegModel& model, const Eigen::Ref<const Eigen::MatrixXd>& X,
                const Eigen::Ref<const Eigen::VectorXd>& y) {
  check_dimensions(model, X.cols(), X.rows(), y.size());
  if (y.size() == 0) throw std::invalid_argument("accuracy: empty input");
  const Eigen::VectorXd p = model.predict_proba(X);
  Eigen::Index correct = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double predicted = p[i] >= 0.5 ? 1.0 : 0.0;
    if (predicted == y[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(y.size());
}

}  // namespace qfs
