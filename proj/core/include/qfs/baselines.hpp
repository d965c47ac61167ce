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
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qfs/bitstring.hpp"
#include "qfs/dataset.hpp"
#include "qfs/logreg.hpp"
#include "qfs/objective.hpp"

namespace qfs {

inline constexpr std::size_t kExhaustiveCap = 22;

struct RankedSubsets {
  // Ascending by (score, bitstring word).
  std::vector<std::pair<Bitstring, double>> entries;

  const std::pair<Bitstring, double>& best() const { return entries.front(); }
};

/// Scores all 2^n inputs through the objective cache.
RankedSubsets exhaustive(const BlackBoxObjective& objective, std::size_t cap = kExhaustiveCap);

/// |w_k| per column.
Eigen::VectorXd feature_importance(const LogRegModel& model);

struct EliminationStep {
  std::size_t removed = 0;   // column index in the full dataset
  std::size_t size = 0;      // features in the model that ranked it
  double train_score = 0.0;  // log-loss of that model on the train data
};

struct EliminationTrace {
  std::size_t n_features = 0;
  std::vector<EliminationStep> steps;
  Bitstring final_subset;
};

/// Backward elimination down to target_k features. Ties in importance go to
/// the lowest column index.
EliminationTrace rfe(const Dataset& train, std::size_t target_k, const LogRegConfig& config = {});

/// Column indices from most to least important: survivors of a full
/// elimination to one feature first, then the removals in reverse order.
std::vector<std::size_t> feature_ranking(const Dataset& train, const LogRegConfig& config = {});

/// First k entries of a ranking as a subset over `width` columns.
Bitstring top_k_subset(const std::vector<std::size_t>& ranking, std::size_t k, std::size_t width);

enum class Scoring { log_loss, accuracy };

Scoring parse_scoring(std::string_view name);

struct RfecvResult {
  Bitstring subset;
  std::size_t best_size = 0;
  std::vector<double> mean_scores;  // index s - 1 holds the mean for size s
  std::vector<std::size_t> ranking;
};

/// Raised when a cross-validation fold has only one class.
class FoldError : public std::runtime_error {
 public:
  FoldError(std::size_t fold, const std::string& what)
      : std::runtime_error("fold " + std::to_string(fold) + ": " + what), fold_(fold) {}
  std::size_t fold() const { return fold_; }

 private:
  std::size_t fold_;
};

/// Stratified fold assignment, one entry per row.
std::vector<std::size_t> stratified_folds(const Eigen::VectorXd& labels, std::size_t folds,
                                          std::uint64_t seed);

RfecvResult rfecv(const Dataset& train, Scoring scoring, std::size_t folds = 5,
                  std::uint64_t seed = 0, const LogRegConfig& config = {});

void write_ranked_csv(const RankedSubsets& ranked, std::ostream& os);
void write_elimination_csv(const EliminationTrace& trace, const std::vector<std::string>& names,
                           std::ostream& os);

}  // namespace qfs
