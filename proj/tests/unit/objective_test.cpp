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
#include <sstream>
#include <thread>

#include "qfs/objective.hpp"
#include "qfs/rng.hpp"

namespace qfs {
namespace {

Dataset toy_data(std::uint64_t seed, std::size_t rows = 120) {
  Rng rng(seed);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), 4);
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) x(i, j) = rng.normal();
    y(i) = rng.uniform() < 1 / (1 + std::exp(-1.5 * x(i, 0) + x(i, 2))) ? 1 : 0;
  }
  return Dataset(x, y, {"a", "b", "c", "d"});
}

TEST(SubsetObjective, EmptySubsetIsInterceptOnly) {
  const Dataset d = toy_data(1);
  SubsetObjective f(d);
  const double p = d.labels().mean();
  const double expect = -(p * std::log(p) + (1 - p) * std::log(1 - p));
  EXPECT_NEAR(f(Bitstring::zeros(4)), expect, 1e-9);
  EXPECT_EQ(f.dimension(), 4u);
  EXPECT_EQ(f.bounds().f_min, 0.0);
  EXPECT_NEAR(f.bounds().f_max, 2 * std::log(2.0), 1e-15);
}

TEST(SubsetObjective, CacheSkipsRetraining) {
  SubsetObjective f(toy_data(2));
  const Bitstring b = Bitstring::parse("1010");
  const double v = f(b);
  const std::size_t misses = f.cache().misses();
  EXPECT_EQ(f(b), v);
  EXPECT_EQ(f.cache().misses(), misses);
  EXPECT_EQ(f.cache().hits(), 1u);
}

TEST(SubsetObjective, InformativeFeaturesLowerLoss) {
  SubsetObjective f(toy_data(3, 400));
  EXPECT_LT(f(Bitstring::parse("1010")), f(Bitstring::parse("0101")));
  EXPECT_LT(f(Bitstring::parse("1000")), f(Bitstring::zeros(4)));
}

TEST(SubsetObjective, PureAndTotal) {
  const Dataset d = toy_data(4);
  SubsetObjective f(d), g(d);
  for (std::uint64_t w = 0; w < 16; ++w) {
    const Bitstring b(w, 4);
    EXPECT_TRUE(std::isfinite(f(b)));
    EXPECT_EQ(f(b), g(b));
    EXPECT_EQ(f(b), train_score(b, d));
  }
}

TEST(SubsetObjective, DimensionMismatchThrows) {
  SubsetObjective f(toy_data(5));
  EXPECT_THROW(f(Bitstring::zeros(3)), ObjectiveError);
}

TEST(TestScore, TrainEqualsTestReducesToTrainScore) {
  const Dataset d = toy_data(6);
  const Bitstring b = Bitstring::parse("1100");
  EXPECT_EQ(test_score(b, d, d), train_score(b, d));
  TestScoreObjective t(d, toy_data(7));
  EXPECT_EQ(t(b), test_score(b, d, toy_data(7)));
}

TEST(Objective, FailureCarriesBitstring) {
  FunctionObjective f(
      3, [](const Bitstring& x) -> double {
        if (x.test(2)) throw std::runtime_error("no");
        return 1.0;
      },
      {0, 1});
  EXPECT_EQ(f(Bitstring::parse("110")), 1.0);
  try {
    f(Bitstring::parse("001"));
    FAIL();
  } catch (const ObjectiveError& e) {
    EXPECT_EQ(e.input().str(), "001");
  }
}

TEST(Objective, NonFiniteScoreRejected) {
  FunctionObjective f(1, [](const Bitstring&) { return std::nan(""); }, {0, 1});
  EXPECT_THROW(f(Bitstring::zeros(1)), ObjectiveError);
}

TEST(ObjectiveCache, FirstWriterWins) {
  ObjectiveCache c;
  const Bitstring b = Bitstring::parse("01");
  EXPECT_EQ(c.insert(b, 0.5), 0.5);
  EXPECT_EQ(c.insert(b, 0.7), 0.5);
  EXPECT_EQ(*c.find(b), 0.5);
  EXPECT_EQ(c.size(), 1u);
}

TEST(ObjectiveCache, ConcurrentEvaluationsAgree) {
  SubsetObjective f(toy_data(8));
  std::vector<std::thread> workers;
  std::vector<std::vector<double>> out(4, std::vector<double>(16));
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      for (std::uint64_t w = 0; w < 16; ++w) out[t][w] = f(Bitstring(w, 4));
    });
  }
  for (auto& w : workers) w.join();
  for (int t = 1; t < 4; ++t) EXPECT_EQ(out[t], out[0]);
  EXPECT_EQ(f.cache().size(), 16u);
}

TEST(ObjectiveCache, CsvRoundTrip) {
  SubsetObjective f(toy_data(9));
  for (std::uint64_t w = 0; w < 16; w += 3) f(Bitstring(w, 4));
  std::stringstream ss;
  f.cache().write_csv(ss);
  ObjectiveCache c;
  EXPECT_EQ(c.read_csv(ss), f.cache().size());
  EXPECT_EQ(c.entries(), f.cache().entries());
}

}  // namespace
}  // namespace qfs
