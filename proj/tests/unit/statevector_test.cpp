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

#include "qfs/objective.hpp"
#include "qfs/oracles.hpp"
#include "qfs/statevector.hpp"
#include "test_util.hpp"

namespace qfs {
namespace {

using std::numbers::pi;

ParamVector vec(std::initializer_list<double> xs) {
  ParamVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v(k++) = x;
  return v;
}

TEST(RunSv, RyPiFlips) {
  const StateVector sv = run_sv(bind(build_real_amplitudes(1, 0), vec({pi})));
  EXPECT_NEAR(std::abs(sv.amplitude(0)), 0.0, 1e-15);
  EXPECT_NEAR(sv.amplitude(1).real(), 1.0, 1e-15);
}

TEST(RunSv, UniformInitQuarterAmplitudes) {
  const Circuit c = build_real_amplitudes(4, 2);
  const StateVector sv = run_sv(bind(c, uniform_init_params(c)));
  for (const auto& a : sv.amplitudes()) EXPECT_NEAR(a.real(), 0.25, 1e-14);
}

TEST(RunSv, HandContractedTwoQubit) {
  const StateVector sv = run_sv(bind(build_real_amplitudes(2, 1), vec({pi / 2, pi / 2, 0, 0})));
  for (double p : sv.probabilities()) EXPECT_NEAR(p, 0.25, 1e-14);
}

TEST(RunSv, BasisOrderingQubitIsBit) {
  // Flip only qubit 1 of three.
  const StateVector sv = run_sv(bind(build_real_amplitudes(3, 0), vec({0, pi, 0})));
  EXPECT_NEAR(sv.probabilities()[2], 1.0, 1e-15);
}

TEST(RunSv, CapExceeded) {
  const Circuit c = build_real_amplitudes(6, 0);
  EXPECT_THROW(run_sv(bind(c, uniform_init_params(c)), SvOptions{5}), std::length_error);
}

TEST(StateVector, NormPreservedPerGate) {
  Rng rng(1);
  const Circuit c = build_real_amplitudes(7, 3);
  const BoundCircuit b = bind(c, testing::random_theta(c.param_count(), rng));
  StateVector sv(7);
  for (const BoundGate& g : b.ops()) {
    sv.apply(g);
    ASSERT_NEAR(sv.norm_squared(), 1.0, 1e-12);
  }
}

TEST(StateVector, RyThenInverseRestores) {
  Rng rng(2);
  const Circuit c = build_real_amplitudes(5, 1);
  StateVector sv = run_sv(bind(c, testing::random_theta(c.param_count(), rng)));
  const std::vector<Amplitude> before(sv.amplitudes().begin(), sv.amplitudes().end());
  sv.apply_ry(3, 0.77);
  sv.apply_ry(3, -0.77);
  for (std::size_t j = 0; j < before.size(); ++j) {
    EXPECT_NEAR(std::abs(sv.amplitude(j) - before[j]), 0.0, 1e-12);
  }
}

TEST(Sample, DeterministicState) {
  Rng rng(3);
  const StateVector sv = run_sv(bind(build_real_amplitudes(1, 0), vec({pi})));
  const SampleSet s = sample(sv, 500, rng);
  EXPECT_EQ(s.count(1), 500u);
  EXPECT_EQ(s.distinct(), 1u);
}

TEST(Sample, UniformCountsWithinFiveSigma) {
  Rng rng(4);
  const Circuit c = build_real_amplitudes(2, 0);
  const SampleSet s = sample(run_sv(bind(c, uniform_init_params(c))), 100000, rng);
  EXPECT_EQ(s.total_shots(), 100000u);
  const double sigma = std::sqrt(100000 * 0.25 * 0.75);
  for (std::uint64_t w = 0; w < 4; ++w) EXPECT_NEAR(static_cast<double>(s.count(w)), 25000, 5 * sigma);
}

TEST(Sample, SeedDeterminism) {
  const Circuit c = build_real_amplitudes(4, 1);
  Rng pr(5);
  const StateVector sv = run_sv(bind(c, testing::random_theta(c.param_count(), pr)));
  Rng a(99), b(99);
  EXPECT_EQ(sample(sv, 1000, a), sample(sv, 1000, b));
}

TEST(Sample, ZeroShotsRejected) {
  Rng rng(1);
  EXPECT_THROW(sample(StateVector(2), 0, rng), std::invalid_argument);
}

TEST(Overlap, IdentityAndOrthogonal) {
  const Circuit c = build_real_amplitudes(2, 0);
  const StateVector a = run_sv(bind(c, vec({0, 0})));
  const StateVector b = run_sv(bind(c, vec({pi, 0})));
  EXPECT_NEAR(overlap_exact(a, a), 1.0, 1e-15);
  EXPECT_NEAR(overlap_exact(a, b), 0.0, 1e-15);
  EXPECT_THROW(overlap_exact(a, StateVector(3)), std::invalid_argument);
}

TEST(Amplitudes, CsvDump) {
  std::ostringstream os;
  write_amplitudes_csv(run_sv(bind(build_real_amplitudes(1, 0), vec({pi}))), os);
  EXPECT_NE(os.str().find("1,"), std::string::npos);
}

// Oracles.

TEST(ExactGradient, ConstantObjectiveIsZero) {
  Rng rng(6);
  const Circuit c = build_real_amplitudes(3, 1);
  FunctionObjective f(3, [](const Bitstring&) { return 0.7; }, {0, 1});
  const Eigen::VectorXd g = exact_gradient(c, testing::random_theta(c.param_count(), rng), f);
  EXPECT_LT(g.cwiseAbs().maxCoeff(), 1e-8);
}

TEST(ExactGradient, SingleQubitClosedForm) {
  const Circuit c = build_real_amplitudes(1, 0);
  FunctionObjective f(1, [](const Bitstring& x) { return x.test(0) ? 1.0 : 0.0; }, {0, 1});
  for (double th : {-2.0, -0.3, 0.4, 1.0, 2.5}) {
    EXPECT_NEAR(exact_gradient(c, vec({th}), f)(0), std::sin(th) / 2, 1e-9);
  }
}

TEST(ExactQfi, SingleQubitIsOne) {
  const Circuit c = build_real_amplitudes(1, 0);
  for (double th : {-1.0, 0.0, 0.5, 2.0}) EXPECT_NEAR(exact_qfi(c, vec({th}))(0, 0), 1.0, 1e-8);
}

TEST(ExactQfi, MatchesFidelityHessian) {
  Rng rng(7);
  const Circuit c = build_real_amplitudes(2, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const ParamVector t = testing::random_theta(c.param_count(), rng);
    const Eigen::MatrixXd a = exact_qfi(c, t);
    const Eigen::MatrixXd b = fidelity_hessian_qfi(c, t);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-4) << a << "\n\n" << b;
  }
}

TEST(ExactQfi, SymmetricPositiveSemidefinite) {
  Rng rng(8);
  const Circuit c = build_real_amplitudes(4, 2);
  const Eigen::MatrixXd q = exact_qfi(c, testing::random_theta(c.param_count(), rng));
  EXPECT_EQ(q, q.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-8);
}

}  // namespace
}  // namespace qfs
