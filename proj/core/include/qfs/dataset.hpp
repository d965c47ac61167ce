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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfs/bitstring.hpp"

namespace qfs {

/// Data ingestion failures: malformed input, unknown codes, encoding drift.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AttributeKind { categorical, numeric };

/// One attribute of the German credit file.
struct AttributeSpec {
  std::string key;          // column name for numeric attributes
  std::string description;
  AttributeKind kind = AttributeKind::numeric;
  std::vector<std::string> codes;  // valid category codes, catalog order
  std::string collapse_to;         // non-empty: binary attribute kept as one indicator
};

/// The 20 attributes in file order, with every documented category code.
const std::vector<AttributeSpec>& german_catalog();

inline constexpr std::size_t kGermanRows = 1000;
inline constexpr std::size_t kGermanEncodedColumns = 59;

struct RawDataset {
  std::vector<std::vector<std::string>> cells;  // rows x 20 attribute tokens
  std::vector<int> labels;                      // 1 = good, 0 = bad

  std::size_t rows() const { return labels.size(); }
};

/// Parses UCI `german.data` (space separated, 20 attributes + label in {1, 2}).
/// Throws DataError naming the offending line.
RawDataset load_german(const std::string& path);
RawDataset parse_german(std::istream& is, std::size_t expected_rows = kGermanRows);

class Dataset {
 public:
  Dataset() = default;
  Dataset(Eigen::MatrixXd features, Eigen::VectorXd labels, std::vector<std::string> names);

  std::size_t rows() const { return static_cast<std::size_t>(features_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(features_.cols()); }
  const Eigen::MatrixXd& features() const { return features_; }
  const Eigen::VectorXd& labels() const { return labels_; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> column_index(const std::string& name) const;
  Dataset take_rows(std::span<const std::size_t> rows) const;
  Dataset take_columns(std::span<const std::size_t> cols) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  Eigen::MatrixXd features_;
  Eigen::VectorXd labels_;
  std::vector<std::string> names_;
};

/// Multi-category attributes expand to one indicator per category present,
/// the two binary attributes collapse to one indicator, numeric attributes
/// pass through unscaled. The full German file yields 59 columns; anything
/// else throws DataError.
Dataset one_hot_encode(const RawDataset& raw, bool expect_german_width = true);

/// Columns whose bit is set, in order. Labels are kept.
Dataset select_columns(const Dataset& data, const Bitstring& subset);

/// Product-moment correlation; nullopt when either input has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);
std::optional<double> pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& y);

enum class DifferenceMode { absolute, relative };

/// Per-feature train/test agreement of the feature-label correlation.
struct SplitCriterion {
  double tolerance = 0.10;
  DifferenceMode mode = DifferenceMode::absolute;
  double guard = 0.05;  // features with max |r| below this are not checked
};

struct FeatureCorrelation {
  std::string name;
  std::optional<double> train;
  std::optional<double> test;
  double difference = 0.0;
  bool checked = false;
  bool within = true;
};

struct PearsonReport {
  std::vector<FeatureCorrelation> features;
  std::string worst_feature;
  double worst_difference = 0.0;
  bool accepted = true;
};

PearsonReport pearson_report(const Dataset& train, const Dataset& test,
                             const SplitCriterion& criterion = {});

struct SplitPair {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  PearsonReport report;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
};

/// Seeded shuffle split, re-drawn until the correlation criterion holds.
/// Attempt a uses the shuffle seeded by derive_seed(seed, {a}).
SplitPair split(const Dataset& data, double ratio, std::uint64_t seed, std::size_t max_retries,
                const SplitCriterion& criterion = {});

/// Header row of feature names followed by `label`; values at full precision.
void write_dataset_csv(const Dataset& data, std::ostream& os);
/// Reads a CSV with a header and a `label` column; '#' lines are skipped.
Dataset read_dataset_csv(std::istream& is);
Dataset read_dataset_csv(const std::string& path);

/// Row indices, seed, criterion and the per-feature report as JSON.
std::string split_manifest_json(const SplitPair& pair, const SplitCriterion& criterion,
                                double ratio);

/// Twenty-feature reference ranking (RFECV with log-loss, scikit-learn, on an
/// independent training split). Used to cross-check our own ranking.
const std::vector<std::string>& reference_top20_features();

}  // namespace qfs
