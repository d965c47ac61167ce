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

#include "qfs/oracles.hpp"

#include <complex>
#include <vector>

namespace qfs {
namespace {

Eigen::VectorXcd dense_state(const Circuit& circuit, const ParamVector& theta) {
  const StateVector sv = run_sv(bind(circuit, theta));
  const auto amps = sv.amplitudes();
  Eigen::VectorXcd out(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t j = 0; j < amps.size(); ++j) out(static_cast<Eigen::Index>(j)) = amps[j];
  return out;
}

double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return std::norm(a.dot(b));
}

}  // namespace

double dense_loss(const Circuit& circuit, const ParamVector& theta,
                  const BlackBoxObjective& objective) {
  const StateVector sv = run_sv(bind(circuit, theta));
  const std::vector<double> p = sv.probabilities();
  double total = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0.0) continue;
    total += p[j] * objective(Bitstring(j, circuit.n_qubits()));
  }
  return total;
}

Eigen::VectorXd exact_gradient(const Circuit& circuit, const ParamVector& theta,
                               const BlackBoxObjective& objective, double step) {
  const Eigen::Index m = theta.size();
  Eigen::VectorXd g(m);
  ParamVector probe = theta;
  for (Eigen::Index k = 0; k < m; ++k) {
    probe(k) = theta(k) + step;
    const double up = dense_loss(circuit, probe, objective);
    probe(k) = theta(k) - step;
    const double down = dense_loss(circuit, probe, objective);
    probe(k) = theta(k);
    g(k) = (up - down) / (2.0 * step);
  }
  return g;
}

Eigen::MatrixXd exact_qfi(const Circuit& circuit, const ParamVector& theta, double step) {
  const Eigen::Index m = theta.size();
  const Eigen::VectorXcd psi = dense_state(circuit, theta);
  std::vector<Eigen::VectorXcd> d(static_cast<std::size_t>(m));
  ParamVector probe = theta;
  for (Eigen::Index k = 0; k < m; ++k) {
    probe(k) = theta(k) + step;
    const Eigen::VectorXcd up = dense_state(circuit, probe);
    probe(k) = theta(k) - step;
    const Eigen::VectorXcd down = dense_state(circuit, probe);
    probe(k) = theta(k);
    d[static_cast<std::size_t>(k)] = (up - down) / (2.0 * step);
  }
  Eigen::MatrixXd q(m, m);
  for (Eigen::Index p = 0; p < m; ++p) {
    const auto& dp = d[static_cast<std::size_t>(p)];
    for (Eigen::Index r = p; r < m; ++r) {
      const auto& dr = d[static_cast<std::size_t>(r)];
      // Eigen's dot conjugates the left operand.
      const std::complex<double> v = dp.dot(dr) - dp.dot(psi) * psi.dot(dr);
      q(p, r) = q(r, p) = 4.0 * v.real();
    }
  }
  return q;
}

Eigen::MatrixXd fidelity_hessian_qfi(const Circuit& circuit, const ParamVector& theta,
                                     double step) {
  const Eigen::Index m = theta.size();
  const Eigen::VectorXcd psi = dense_state(circuit, theta);
  auto f = [&](Eigen::Index p, double sp, Eigen::Index r, double sr) {
    ParamVector x = theta;
    x(p) += sp * step;
    x(r) += sr * step;
    return fidelity(psi, dense_state(circuit, x));
  };
  Eigen::MatrixXd h(m, m);
  for (Eigen::Index p = 0; p < m; ++p) {
    ParamVector x = theta;
    x(p) += step;
    const double up = fidelity(psi, dense_state(circuit, x));
    x(p) = theta(p) - step;
    const double down = fidelity(psi, dense_state(circuit, x));
    h(p, p) = (up - 2.0 + down) / (step * step);
    for (Eigen::Index r = p + 1; r < m; ++r) {
      const double v = (f(p, 1, r, 1) - f(p, 1, r, -1) - f(p, -1, r, 1) + f(p, -1, r, -1)) /
                       (4.0 * step * step);
      h(p, r) = h(r, p) = v;
    }
  }
  return -2.0 * h;
}

}  // namespace qfs
