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

#include <atomic>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qfs/bitstring.hpp"
#include "qfs/dataset.hpp"
#include "qfs/logreg.hpp"

namespace qfs {

/// Raised when the black box fails on a particular input.
class ObjectiveError : public std::runtime_error {
 public:
  ObjectiveError(const Bitstring& input, const std::string& what)
      : std::runtime_error("objective failed on " + input.str() + ": " + what), input_(input) {}
  const Bitstring& input() const { return input_; }

 private:
  Bitstring input_;
};

struct ScoreBounds {
  double f_min = 0.0;
  double f_max = 1.0;
};

/// Memo of bitstring -> score. Lookups are concurrent; the first writer of a
/// key wins and later inserts of the same key return the stored value.
class ObjectiveCache {
 public:
  std::optional<double> find(const Bitstring& x) const;
  double insert(const Bitstring& x, double score);

  std::size_t size() const;
  std::size_t hits() const { return hits_.load(); }
  std::size_t misses() const { return misses_.load(); }

  /// Entries sorted by word.
  std::vector<std::pair<Bitstring, double>> entries() const;

  void write_csv(std::ostream& os) const;
  /// Merges rows of a previously written cache. Returns the number read.
  std::size_t read_csv(std::istream& is);

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<Bitstring, double> scores_;
  mutable std::atomic<std::size_t> hits_{0};
  mutable std::atomic<std::size_t> misses_{0};
};

/// f: {0,1}^n -> R, queried through a cache.
class BlackBoxObjective {
 public:
  virtual ~BlackBoxObjective() = default;

  virtual std::size_t dimension() const = 0;
  virtual ScoreBounds bounds() const = 0;

  /// Cached evaluation. Failures are rethrown as ObjectiveError.
  double operator()(const Bitstring& x) const;

  ObjectiveCache& cache() const { return cache_; }

 protected:
  virtual double compute(const Bitstring& x) const = 0;

 private:
  mutable ObjectiveCache cache_;
};

/// Wraps a plain function; handy for synthetic objectives.
class FunctionObjective final : public BlackBoxObjective {
 public:
  FunctionObjective(std::size_t n, std::function<double(const Bitstring&)> fn, ScoreBounds bounds);

  std::size_t dimension() const override { return n_; }
  ScoreBounds bounds() const override { return bounds_; }

 protected:
  double compute(const Bitstring& x) const override { return fn_(x); }

 private:
  std::size_t n_;
  std::function<double(const Bitstring&)> fn_;
  ScoreBounds bounds_;
};

inline constexpr double kDefaultLogLossCap = 1.3862943611198906;  // 2 ln 2

/// f(x) = training log-loss of a logistic regression on the columns picked
/// by x. The empty subset fits an intercept-only model.
class SubsetObjective final : public BlackBoxObjective {
 public:
  explicit SubsetObjective(Dataset train, LogRegConfig config = {},
                           double f_max = kDefaultLogLossCap);

  std::size_t dimension() const override { return train_.cols(); }
  ScoreBounds bounds() const override { return {0.0, f_max_}; }
  const Dataset& train() const { return train_; }
  const LogRegConfig& config() const { return config_; }

 protected:
  double compute(const Bitstring& x) const override;

 private:
  Dataset train_;
  LogRegConfig config_;
  double f_max_;
};

/// Held-out score: train on `train`, evaluate log-loss on `test`.
class TestScoreObjective final : public BlackBoxObjective {
 public:
  TestScoreObjective(Dataset train, Dataset test, LogRegConfig config = {});

  std::size_t dimension() const override { return train_.cols(); }
  ScoreBounds bounds() const override { return {0.0, kDefaultLogLossCap}; }

 protected:
  double compute(const Bitstring& x) const override;

 private:
  Dataset train_;
  Dataset test_;
  LogRegConfig config_;
};

/// Training log-loss of the subset model (uncached helper).
double train_score(const Bitstring& subset, const Dataset& train, const LogRegConfig& config = {});

/// Fit on train_data columns, log-loss on test_data columns.
double test_score(const Bitstring& subset, const Dataset& train_data, const Dataset& test_data,
                  const LogRegConfig& config = {});

}  // namespace qfs
