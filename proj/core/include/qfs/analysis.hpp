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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfs/baselines.hpp"
#include "qfs/bitstring.hpp"
#include "qfs/dataset.hpp"
#include "qfs/logreg.hpp"
#include "qfs/objective.hpp"
#include "qfs/sample_set.hpp"

namespace qfs {

struct CdfPoint {
  double score = 0.0;
  double cumulative = 0.0;
};

struct CdfCurve {
  std::vector<CdfPoint> points;  // one per distinct score, ascending

  /// Probability mass on scores <= threshold.
  double mass_at_or_below(double threshold) const;
};

/// Empirical CDF of f over a sample set, weighted by frequency.
CdfCurve cdf(const SampleSet& samples, const BlackBoxObjective& objective);

/// CDF with equal weight on every ranked subset (the uniform-sampling curve).
CdfCurve uniform_cdf(const RankedSubsets& ranked);

void write_cdf_csv(const CdfCurve& curve, std::ostream& os);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Linear-interpolation percentile, q in [0, 1].
double percentile(std::vector<double> values, double q);

struct BootstrapConfig {
  std::size_t resamples = 50;
  double fraction = 0.7;
  double level = 0.95;
  std::uint64_t seed = 0;
  std::size_t max_redraws = 1000;  // single-class subsamples tolerated in total
};

struct BootstrapResult {
  Interval train;
  Interval test;
  std::size_t redraws = 0;  // degenerate subsamples that were drawn again
};

/// Each resample fits on a fraction of the train rows and scores on that
/// subsample and on a fraction of the test rows.
BootstrapResult bootstrap_ci(const Bitstring& subset, const Dataset& train, const Dataset& test,
                             const BootstrapConfig& config = {},
                             const LogRegConfig& model = {});

struct PairedConfig {
  std::size_t trials = 1000;
  double fraction = 0.7;
  std::uint64_t seed = 0;
};

struct WinFractions {
  double train = 0.0;
  double test = 0.0;
  std::size_t compared = 0;  // subsets averaged (1 for a single comparison)
};

/// Fraction of shared row subsamples on which a scores strictly lower than b.
WinFractions paired_compare(const Bitstring& a, const Bitstring& b, const Dataset& train,
                            const Dataset& test, const PairedConfig& config = {},
                            const LogRegConfig& model = {});

/// The k distinct sampled subsets with the lowest scores under train_objective,
/// ties by bitstring word.
std::vector<Bitstring> top_k_sampled(const SampleSet& samples,
                                     const BlackBoxObjective& train_objective, std::size_t k);

WinFractions top_k_average_compare(const SampleSet& samples,
                                   const BlackBoxObjective& train_objective,
                                   const Bitstring& classical, const Dataset& train,
                                   const Dataset& test, std::size_t k = 10,
                                   const PairedConfig& config = {},
                                   const LogRegConfig& model = {});

struct QuboModel {
  std::size_t n = 0;
  double offset = 0.0;
  Eigen::VectorXd linear;
  Eigen::VectorXd pairwise;  // (i, j), i < j, row-major
  double mse = 0.0;

  double pair(std::size_t i, std::size_t j) const;
};

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n);

/// Least-squares fit of {1, x_i, x_i x_j} to a full truth table indexed by
/// bitstring word. Uses the orthogonality of the +-1 parity basis on the
/// hypercube, which makes the projection exact.
QuboModel qubo_fit(std::span<const double> table, std::size_t n);
QuboModel qubo_fit(const BlackBoxObjective& objective, std::size_t cap = kExhaustiveCap);

double qubo_eval(const QuboModel& model, const Bitstring& x);

std::string qubo_to_json(const QuboModel& model);

}  // namespace qfs
