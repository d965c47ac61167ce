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

#include "qfs/qnspsa.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include "json.hpp"

namespace qfs {
namespace {

// Sub-stream coordinates for derive_seed.
constexpr std::uint64_t kSetup = std::numeric_limits<std::uint64_t>::max();
enum Purpose : std::uint64_t {
  kGradient = 1,
  kQfi = 2,
  kCandidate = 3,
  kSigma = 4,
  kFinal = 5,
  kStartLoss = 6,
};

Eigen::VectorXd draw_signs(Eigen::Index m, Rng& rng) {
  Eigen::VectorXd d(m);
  for (Eigen::Index k = 0; k < m; ++k) d(k) = rng.sign();
  return d;
}

}  // namespace

double Schedule::at(std::size_t iteration) const {
  if (exponent == 0.0) return base;
  return base / std::pow(static_cast<double>(iteration) + 1.0 + offset, exponent);
}

void OptimizerConfig::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  need(perturbation.base > 0.0, "perturbation must be positive");
  need(learning_rate.base > 0.0, "learning rate must be positive");
  need(perturbation.offset >= 0.0 && learning_rate.offset >= 0.0, "schedule offset must be >= 0");
  need(perturbation.exponent >= 0.0 && learning_rate.exponent >= 0.0,
       "schedule exponent must be >= 0");
  need(regularization > 0.0, "regularization floor must be positive");
  need(resamples >= 1, "resamples must be >= 1");
  need(blocking_tolerance >= 0.0, "blocking tolerance must be >= 0");
  need(loss_mode == EstimationMode::exact || shots >= 1, "shots must be >= 1");
  need(fidelity_mode == EstimationMode::exact || shots >= 1, "shots must be >= 1");
  need(!blocking || sigma_repeats >= 2 || loss_mode == EstimationMode::exact,
       "sigma estimation needs at least 2 repeats");
  need(final_shots >= 1, "final shots must be >= 1");
}

Eigen::VectorXd spsa_gradient(const Estimator& est, const Circuit& circuit,
                              const ParamVector& theta, const BlackBoxObjective& objective,
                              double epsilon, Rng& rng) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("spsa_gradient: epsilon must be positive");
  const Eigen::VectorXd delta = draw_signs(theta.size(), rng);
  const double plus = est.loss(circuit, theta + epsilon * delta, objective, rng);
  const double minus = est.loss(circuit, theta - epsilon * delta, objective, rng);
  // 1/Delta_k == Delta_k for +-1 entries.
  return ((plus - minus) / (2.0 * epsilon)) * delta;
}

Eigen::MatrixXd spsa_qfi(const Estimator& est, const Circuit& circuit, const ParamVector& theta,
                         double epsilon, Rng& rng) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("spsa_qfi: epsilon must be positive");
  const Eigen::VectorXd d1 = draw_signs(theta.size(), rng);
  const Eigen::VectorXd d2 = draw_signs(theta.size(), rng);
  const double f1 = est.fidelity(circuit, theta, theta + epsilon * (d1 + d2), rng);
  const double f2 = est.fidelity(circuit, theta, theta + epsilon * d1, rng);
  const double f3 = est.fidelity(circuit, theta, theta - epsilon * (d1 - d2), rng);
  const double f4 = est.fidelity(circuit, theta, theta - epsilon * d1, rng);
  const double diff = f1 - f2 - f3 + f4;
  const Eigen::MatrixXd outer = d1 * d2.transpose() + d2 * d1.transpose();
  return outer * (diff / (-2.0 * epsilon * epsilon));
}

Eigen::MatrixXd regularize_qfi(const Eigen::MatrixXd& average, double beta) {
  if (average.rows() != average.cols()) throw std::invalid_argument("regularize_qfi: not square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(average);
  if (eig.info() != Eigen::Success) throw NumericError("QFI eigendecomposition failed");
  const Eigen::VectorXd values = eig.eigenvalues().cwiseMax(beta);
  const Eigen::MatrixXd& v = eig.eigenvectors();
  Eigen::MatrixXd out = v * values.asDiagonal() * v.transpose();
  return 0.5 * (out + out.transpose());
}

OptimizerState initial_state(const OptimizerConfig& config, const Estimator& est,
                             const Circuit& circuit, const BlackBoxObjective& objective) {
  config.validate();
  OptimizerState s;
  s.theta = uniform_init_params(circuit);
  const auto m = static_cast<Eigen::Index>(circuit.param_count());
  s.qfi_average = Eigen::MatrixXd::Zero(m, m);

  if (config.blocking && est.loss_mode() == EstimationMode::sampled) {
    std::vector<double> xs;
    xs.reserve(config.sigma_repeats);
    for (std::size_t r = 0; r < config.sigma_repeats; ++r) {
      Rng rng(derive_seed(config.seed, {kSetup, kSigma, r}));
      xs.push_back(est.loss(circuit, s.theta, objective, rng));
    }
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    s.sigma0 = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  Rng rng(derive_seed(config.seed, {kSetup, kStartLoss, 0}));
  s.current_loss = est.loss(circuit, s.theta, objective, rng);
  s.initial_loss = s.current_loss;
  return s;
}

OptimizerState qnspsa_step(const OptimizerState& state, const OptimizerConfig& config,
                           const Estimator& est, const Circuit& circuit,
                           const BlackBoxObjective& objective) {
  const auto m = static_cast<Eigen::Index>(circuit.param_count());
  if (state.theta.size() != m || state.qfi_average.rows() != m || state.qfi_average.cols() != m) {
    throw std::invalid_argument("optimizer state does not match circuit");
  }
  const std::size_t k = state.iteration;
  const double eps = config.perturbation.at(k);
  const double eta = config.learning_rate.at(k);
  const auto reps = static_cast<double>(config.resamples);

  Eigen::VectorXd g = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t r = 0; r < config.resamples; ++r) {
    Rng rg(derive_seed(config.seed, {k, kGradient, r}));
    g += spsa_gradient(est, circuit, state.theta, objective, eps, rg);
  }
  for (std::size_t r = 0; r < config.resamples; ++r) {
    Rng rq(derive_seed(config.seed, {k, kQfi, r}));
    q += spsa_qfi(est, circuit, state.theta, eps, rq);
  }
  g /= reps;
  q /= reps;

  OptimizerState next = state;
  const double w = static_cast<double>(k);
  next.qfi_average = (state.qfi_average * w + q) / (w + 1.0);

  const Eigen::MatrixXd metric = regularize_qfi(next.qfi_average, config.regularization) / 4.0;
  const Eigen::VectorXd dir = metric.ldlt().solve(g);
  if (!dir.allFinite() || (metric * dir - g).norm() > 1e-8 * (1.0 + g.norm())) {
    throw NumericError("natural-gradient solve failed at iteration " + std::to_string(k));
  }
  const ParamVector candidate = state.theta - eta * dir;

  Rng rc(derive_seed(config.seed, {k, kCandidate, 0}));
  const double loss = est.loss(circuit, candidate, objective, rc);
  const bool accept =
      !config.blocking || loss <= state.current_loss + config.blocking_tolerance * state.sigma0;
  if (accept) {
    next.theta = candidate;
    next.current_loss = loss;
  }
  next.iteration = k + 1;
  next.trace.push_back({k, loss, accept, next.current_loss, std::nullopt});
  return next;
}

TrainingResult run(const OptimizerConfig& config, const Circuit& circuit,
                   const BlackBoxObjective& objective, const Backend& backend,
                   const RunHooks& hooks, std::optional<OptimizerState> resume) {
  config.validate();
  if (objective.dimension() != circuit.n_qubits()) {
    throw std::invalid_argument("objective dimension does not match qubit count");
  }
  const Estimator est(backend, config.shots, config.loss_mode, config.fidelity_mode);
  OptimizerState state =
      resume ? std::move(*resume) : initial_state(config, est, circuit, objective);
  if (state.trace.size() != state.iteration) {
    throw std::invalid_argument("resumed state: trace length differs from iteration count");
  }

  using Clock = std::chrono::steady_clock;
  while (state.iteration < config.iterations) {
    const auto t0 = Clock::now();
    state = qnspsa_step(state, config, est, circuit, objective);
    if (config.record_timing) {
      state.trace.back().wall_ms =
          std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }
    if (hooks.on_step) hooks.on_step(state);
  }

  TrainingResult result;
  Rng rng(derive_seed(config.seed, {kSetup, kFinal, 0}));
  result.final_samples = backend.sample(bind(circuit, state.theta), config.final_shots, rng);
  result.state = std::move(state);
  result.config = config;
  result.seed = config.seed;
  return result;
}

std::string state_to_json(const OptimizerState& state) {
  nlohmann::ordered_json j;
  j["iteration"] = state.iteration;
  j["theta"] = std::vector<double>(state.theta.data(), state.theta.data() + state.theta.size());
  std::vector<std::vector<double>> rows;
  for (Eigen::Index r = 0; r < state.qfi_average.rows(); ++r) {
    rows.emplace_back();
    for (Eigen::Index c = 0; c < state.qfi_average.cols(); ++c) {
      rows.back().push_back(state.qfi_average(r, c));
    }
  }
  j["qfi_average"] = rows;
  j["current_loss"] = state.current_loss;
  j["initial_loss"] = state.initial_loss;
  j["sigma0"] = state.sigma0;
  nlohmann::ordered_json trace = nlohmann::ordered_json::array();
  for (const TraceRow& t : state.trace) {
    nlohmann::ordered_json row = {t.iteration, t.candidate_loss, t.accepted, t.current_loss};
    row.push_back(t.wall_ms ? nlohmann::ordered_json(*t.wall_ms) : nlohmann::ordered_json());
    trace.push_back(row);
  }
  j["trace"] = trace;
  return j.dump();
}

OptimizerState state_from_json(const std::string& text) {
  OptimizerState s;
  try {
    const auto j = nlohmann::json::parse(text);
    s.iteration = j.at("iteration").get<std::size_t>();
    const auto theta = j.at("theta").get<std::vector<double>>();
    s.theta = Eigen::Map<const Eigen::VectorXd>(theta.data(), static_cast<Eigen::Index>(theta.size()));
    const auto rows = j.at("qfi_average").get<std::vector<std::vector<double>>>();
    const auto m = static_cast<Eigen::Index>(rows.size());
    s.qfi_average.resize(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)].size()) != m) {
        throw std::invalid_argument("qfi_average is not square");
      }
      for (Eigen::Index c = 0; c < m; ++c) s.qfi_average(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    s.current_loss = j.at("current_loss").get<double>();
    s.initial_loss = j.at("initial_loss").get<double>();
    s.sigma0 = j.at("sigma0").get<double>();
    for (const auto& row : j.at("trace")) {
      TraceRow t;
      t.iteration = row.at(0).get<std::size_t>();
      t.candidate_loss = row.at(1).get<double>();
      t.accepted = row.at(2).get<bool>();
      t.current_loss = row.at(3).get<double>();
      if (!row.at(4).is_null()) t.wall_ms = row.at(4).get<double>();
      s.trace.push_back(t);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad optimizer snapshot: ") + e.what());
  }
  if (s.theta.size() != s.qfi_average.rows()) {
    throw std::invalid_argument("bad optimizer snapshot: theta and QFI sizes differ");
  }
  if (s.trace.size() != s.iteration) {
    throw std::invalid_argument("bad optimizer snapshot: trace length differs from iteration");
  }
  return s;
}

void write_trace_csv(const std::vector<TraceRow>& trace, std::ostream& os) {
  const auto old = os.precision(17);
  os << "iteration,loss,accepted,current_loss,wall_ms\n";
  for (const TraceRow& t : trace) {
    os << t.iteration << ',' << t.candidate_loss << ',' << (t.accepted ? 1 : 0) << ','
       << t.current_loss << ',';
    if (t.wall_ms) os << *t.wall_ms;
    os << '\n';
  }
  os.precision(old);
}

}  // namespace qfs
