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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qfs/oracles.hpp"
#include "qfs/qnspsa.hpp"
#include "test_util.hpp"

namespace qfs {
namespace {

ParamVector vec(std::initializer_list<double> xs) {
  ParamVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v(k++) = x;
  return v;
}

FunctionObjective bit_objective(double f0, double f1) {
  return FunctionObjective(1, [f0, f1](const Bitstring& x) { return x.test(0) ? f1 : f0; },
                           {std::min(f0, f1), std::max(f0, f1)});
}

TEST(SpsaGradient, ConstantObjectiveGivesZero) {
  StatevectorBackend be;
  const Estimator est(be, 1, EstimationMode::exact, EstimationMode::exact);
  const Circuit c = build_real_amplitudes(3, 1);
  FunctionObjective f(3, [](const Bitstring&) { return 0.3; }, {0, 1});
  Rng rng(1);
  const Eigen::VectorXd g = spsa_gradient(est, c, uniform_init_params(c), f, 0.01, rng);
  EXPECT_LT(g.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SpsaGradient, RankOneMagnitudes) {
  StatevectorBackend be;
  const Estimator est(be, 100);
  const Circuit c = build_real_amplitudes(3, 1);
  FunctionObjective f(3, [](const Bitstring& x) { return x.word() * 0.1; }, {0, 0.7});
  Rng rng(2);
  const Eigen::VectorXd g = spsa_gradient(est, c, uniform_init_params(c), f, 0.1, rng);
  for (Eigen::Index k = 1; k < g.size(); ++k) EXPECT_EQ(std::abs(g(k)), std::abs(g(0)));
}

TEST(SpsaGradient, SingleQubitMeanMatchesClosedForm) {
  StatevectorBackend be;
  const Estimator est(be, 1, EstimationMode::exact, EstimationMode::exact);
  const Circuit c = build_real_amplitudes(1, 0);
  auto f = bit_objective(0, 1);
  Rng rng(3);
  double mean = 0.0;
  for (int r = 0; r < 10000; ++r) mean += spsa_gradient(est, c, vec({1.0}), f, 0.01, rng)(0);
  mean /= 10000;
  EXPECT_NEAR(mean, std::sin(1.0) / 2, 0.05 * std::sin(1.0) / 2);
}

TEST(SpsaGradient, BiasShrinksWithEpsilon) {
  StatevectorBackend be;
  const Estimator est(be, 1, EstimationMode::exact, EstimationMode::exact);
  const Circuit c = build_real_amplitudes(2, 1);
  FunctionObjective f(2, [](const Bitstring& x) { return std::vector<double>{0.3, 1.0, 0.1, 0.8}[x.word()]; },
                      {0, 1});
  const ParamVector t = vec({0.3, 1.1, -0.4, 0.9});
  const Eigen::VectorXd exact = exact_gradient(c, t, f);
  // Average over every sign pattern, which removes the sampling part and
  // leaves only the finite-difference bias.
  auto averaged = [&](double eps) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(4);
    for (int mask = 0; mask < 16; ++mask) {
      Eigen::VectorXd d(4);
      for (int k = 0; k < 4; ++k) d(k) = (mask >> k) & 1 ? 1.0 : -1.0;
      const double up = exact_loss(be, c, t + eps * d, f);
      const double dn = exact_loss(be, c, t - eps * d, f);
      acc += (up - dn) / (2 * eps) * d;
    }
    return Eigen::VectorXd(acc / 16);
  };
  EXPECT_LT((averaged(0.01) - exact).norm(), (averaged(0.1) - exact).norm());
}

TEST(SpsaQfi, ExactlySymmetric) {
  StatevectorBackend be;
  const Estimator est(be, 500);
  const Circuit c = build_real_amplitudes(3, 1);
  Rng rng(4);
  const Eigen::MatrixXd q = spsa_qfi(est, c, testing::random_theta(c.param_count(), rng), 0.1, rng);
  EXPECT_EQ(q, q.transpose());
}

TEST(SpsaQfi, SingleQubitMeanIsOne) {
  StatevectorBackend be;
  const Estimator est(be, 1, EstimationMode::exact, EstimationMode::exact);
  const Circuit c = build_real_amplitudes(1, 0);
  Rng rng(5);
  double mean = 0.0;
  for (int r = 0; r < 10000; ++r) mean += spsa_qfi(est, c, vec({0.7}), 0.01, rng)(0, 0);
  EXPECT_NEAR(mean / 10000, 1.0, 0.05);
}

TEST(SpsaQfi, TwoQubitMeanMatchesOracle) {
  StatevectorBackend be;
  const Estimator est(be, 1, EstimationMode::exact, EstimationMode::exact);
  const Circuit c = build_real_amplitudes(2, 1);
  const ParamVector t = vec({0.4, -1.2, 2.0, 0.3});
  Rng rng(6);
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(4, 4);
  for (int r = 0; r < 10000; ++r) mean += spsa_qfi(est, c, t, 0.01, rng);
  mean /= 10000;
  EXPECT_LT((mean - exact_qfi(c, t)).cwiseAbs().maxCoeff(), 0.1);
}

TEST(RegularizeQfi, IdentityUnchanged) {
  const Eigen::MatrixXd i = Eigen::MatrixXd::Identity(5, 5);
  EXPECT_LT((regularize_qfi(i, 0.01) - i).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((regularize_qfi(i, 1.0) - i).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(RegularizeQfi, ClampsNegativeEigenvalue) {
  Eigen::MatrixXd m(2, 2);
  m << 0.75, -1.25, -1.25, 0.75;  // eigenvalues 2 and -0.5
  const Eigen::MatrixXd r = regularize_qfi(m, 0.01);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r);
  EXPECT_NEAR(eig.eigenvalues()(0), 0.01, 1e-12);
  EXPECT_NEAR(eig.eigenvalues()(1), 2.0, 1e-12);
  EXPECT_EQ(r, r.transpose());
}

TEST(RegularizeQfi, SolveResidual) {
  Rng rng(7);
  Eigen::MatrixXd a(6, 6);
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 6; ++j) a(i, j) = rng.normal();
  const Eigen::MatrixXd r = regularize_qfi(0.5 * (a + a.transpose()), 0.01);
  Eigen::VectorXd b(6);
  for (Eigen::Index i = 0; i < 6; ++i) b(i) = rng.normal();
  const Eigen::VectorXd x = r.ldlt().solve(b);
  EXPECT_LT((r * x - b).norm(), 1e-10);
}

OptimizerConfig exact_config() {
  OptimizerConfig cfg;
  cfg.loss_mode = EstimationMode::exact;
  cfg.fidelity_mode = EstimationMode::exact;
  cfg.final_shots = 100;
  return cfg;
}

TEST(QnspsaStep, OptimalDeterministicStaysPut) {
  StatevectorBackend be;
  OptimizerConfig cfg = exact_config();
  const Estimator est(be, 1, EstimationMode::exact, EstimationMode::exact);
  const Circuit c = build_real_amplitudes(1, 0);
  auto f = bit_objective(1, 0);
  OptimizerState s = initial_state(cfg, est, c, f);
  s.theta = vec({std::numbers::pi});  // |1>, the optimum, zero gradient
  Rng rng(1);
  s.current_loss = est.loss(c, s.theta, f, rng);
  const OptimizerState next = qnspsa_step(s, cfg, est, c, f);
  EXPECT_NEAR(next.theta(0), std::numbers::pi, 1e-12);
  EXPECT_TRUE(next.trace.back().accepted);
  EXPECT_EQ(next.iteration, 1u);
}

TEST(QnspsaStep, BlockingRejectsLargeRise) {
  StatevectorBackend be;
  OptimizerConfig cfg = exact_config();
  cfg.learning_rate.base = 1.0;
  const Estimator est(be, 1, EstimationMode::exact, EstimationMode::exact);
  const Circuit c = build_real_amplitudes(1, 0);
  auto f = bit_objective(1, 0);
  OptimizerState s = initial_state(cfg, est, c, f);
  s.current_loss = -1.0;  // nothing can beat this
  s.sigma0 = 0.1;
  const OptimizerState next = qnspsa_step(s, cfg, est, c, f);
  EXPECT_FALSE(next.trace.back().accepted);
  EXPECT_EQ(next.theta, s.theta);
  EXPECT_EQ(next.current_loss, -1.0);
}

TEST(QnspsaStep, RunningAverageStaysSymmetric) {
  StatevectorBackend be;
  OptimizerConfig cfg;
  cfg.shots = 200;
  const Estimator est(be, cfg.shots);
  const Circuit c = build_real_amplitudes(3, 1);
  FunctionObjective f(3, [](const Bitstring& x) { return x.count() * 0.2; }, {0, 0.6});
  OptimizerState s = initial_state(cfg, est, c, f);
  for (int k = 0; k < 10; ++k) {
    s = qnspsa_step(s, cfg, est, c, f);
    EXPECT_EQ(s.qfi_average, s.qfi_average.transpose());
    EXPECT_EQ(s.trace.size(), s.iteration);
  }
}

TEST(Run, SingleQubitToyConverges) {
  StatevectorBackend be;
  OptimizerConfig cfg = exact_config();
  cfg.iterations = 200;
  const Circuit c = build_real_amplitudes(1, 0);
  auto f = bit_objective(1, 0);
  const TrainingResult r = run(cfg, c, f, be);
  const double p1 = be.probabilities(bind(c, r.state.theta))[1];
  EXPECT_GT(p1, 0.99);
}

TEST(Run, AcceptedLossesRespectBlocking) {
  MpsBackend be;
  OptimizerConfig cfg;
  cfg.iterations = 40;
  cfg.shots = 128;
  cfg.learning_rate.base = 0.2;
  const Circuit c = build_real_amplitudes(4, 1);
  FunctionObjective f(4, [](const Bitstring& x) { return std::abs(x.count() - 1.0) * 0.3; }, {0, 0.9});
  const TrainingResult r = run(cfg, c, f, be);
  double prev = r.state.initial_loss;
  for (const TraceRow& t : r.state.trace) {
    if (t.accepted) {
      EXPECT_LE(t.candidate_loss, prev + cfg.blocking_tolerance * r.state.sigma0);
      prev = t.candidate_loss;
    }
    EXPECT_EQ(t.current_loss, prev);
  }
  EXPECT_GT(r.state.sigma0, 0.0);
}

TEST(Run, FixedSeedIsReproducible) {
  MpsBackend be;
  OptimizerConfig cfg;
  cfg.iterations = 15;
  cfg.shots = 64;
  cfg.seed = 17;
  const Circuit c = build_real_amplitudes(3, 1);
  FunctionObjective f(3, [](const Bitstring& x) { return x.word() * 0.1; }, {0, 0.7});
  const TrainingResult a = run(cfg, c, f, be);
  const TrainingResult b = run(cfg, c, f, be);
  EXPECT_EQ(a.state.theta, b.state.theta);
  EXPECT_EQ(a.state.trace, b.state.trace);
  EXPECT_EQ(a.final_samples, b.final_samples);
  cfg.seed = 18;
  EXPECT_NE(run(cfg, c, f, be).state.theta, a.state.theta);
}

TEST(Run, ResumeFromSnapshotMatchesStraightRun) {
  StatevectorBackend be;
  OptimizerConfig cfg;
  cfg.iterations = 12;
  cfg.shots = 64;
  cfg.seed = 5;
  const Circuit c = build_real_amplitudes(3, 1);
  FunctionObjective f(3, [](const Bitstring& x) { return x.count() * 0.25; }, {0, 0.75});
  std::string snap;
  RunHooks hooks;
  hooks.on_step = [&](const OptimizerState& s) {
    if (s.iteration == 5) snap = state_to_json(s);
  };
  const TrainingResult full = run(cfg, c, f, be, hooks);
  ASSERT_FALSE(snap.empty());
  const TrainingResult resumed = run(cfg, c, f, be, {}, state_from_json(snap));
  EXPECT_EQ(resumed.state.theta, full.state.theta);
  EXPECT_EQ(resumed.state.trace, full.state.trace);
  EXPECT_EQ(resumed.final_samples, full.final_samples);
}

TEST(Run, MoreResamplesReduceUpdateVariance) {
  StatevectorBackend be;
  const Circuit c = build_real_amplitudes(2, 1);
  FunctionObjective f(2, [](const Bitstring& x) { return std::vector<double>{0.3, 1.0, 0.1, 0.8}[x.word()]; },
                      {0, 1});
  auto spread = [&](std::size_t resamples) {
    OptimizerConfig cfg;
    cfg.shots = 256;
    cfg.resamples = resamples;
    cfg.blocking = false;
    cfg.learning_rate.base = 0.1;
    const Estimator est(be, cfg.shots);
    std::vector<Eigen::VectorXd> steps;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      cfg.seed = seed;
      const OptimizerState s0 = initial_state(cfg, est, c, f);
      steps.push_back(qnspsa_step(s0, cfg, est, c, f).theta - s0.theta);
    }
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(4);
    for (const auto& s : steps) mean += s;
    mean /= static_cast<double>(steps.size());
    double var = 0.0;
    for (const auto& s : steps) var += (s - mean).squaredNorm();
    return var;
  };
  EXPECT_LT(spread(10), spread(1));
}

TEST(Config, Validation) {
  OptimizerConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.perturbation.base = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.resamples = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.regularization = -1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Schedule, PowerLaw) {
  const Schedule s{0.2, 1.0, 0.602};
  EXPECT_DOUBLE_EQ(s.at(0), 0.2 / std::pow(2.0, 0.602));
  EXPECT_LT(s.at(100), s.at(10));
  EXPECT_EQ(Schedule{0.01}.at(1000), 0.01);
}

TEST(Snapshot, RoundTrip) {
  OptimizerState s;
  s.theta = vec({0.1, 1.0 / 3.0});
  s.iteration = 2;
  s.qfi_average = Eigen::MatrixXd::Identity(2, 2) * 0.7;
  s.current_loss = 0.123456789012345678;
  s.sigma0 = 0.01;
  s.trace = {{0, 0.5, true, 0.5, std::nullopt}, {1, 0.6, false, 0.5, 3.5}};
  const OptimizerState t = state_from_json(state_to_json(s));
  EXPECT_EQ(t.theta, s.theta);
  EXPECT_EQ(t.qfi_average, s.qfi_average);
  EXPECT_EQ(t.current_loss, s.current_loss);
  EXPECT_EQ(t.trace, s.trace);
  EXPECT_THROW(state_from_json("{}"), std::invalid_argument);
}

TEST(Trace, CsvLeavesTimingBlankWhenOff) {
  std::ostringstream os;
  write_trace_csv({{0, 0.5, true, 0.5, std::nullopt}}, os);
  EXPECT_EQ(os.str(), "iteration,loss,accepted,current_loss,wall_ms\n0,0.5,1,0.5,\n");
}

}  // namespace
}  // namespace qfs
