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

#include <fstream>
#include <set>
#include <sstream>

#include "qfs/dataset.hpp"
#include "qfs/rng.hpp"

namespace qfs {
namespace {

const std::string kGermanPath = std::string(QFS_DATA_DIR) + "/german.data";

const Dataset& german() {
  static const Dataset d = one_hot_encode(load_german(kGermanPath));
  return d;
}

std::string read_all(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(LoadGerman, OfficialFile) {
  const RawDataset raw = load_german(kGermanPath);
  EXPECT_EQ(raw.labels.size(), 1000u);
  std::size_t good = 0;
  for (double y : raw.labels) good += y == 1.0;
  EXPECT_EQ(good, 700u);
}

TEST(LoadGerman, TruncatedFileNamesLine) {
  std::string text = read_all(kGermanPath);
  text.resize(text.size() / 2);
  text = text.substr(0, text.rfind('\n') + 1);
  text += "A11 6 A34\n";
  std::istringstream in(text);
  try {
    parse_german(in);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos) << e.what();
  }
}

TEST(LoadGerman, UnknownCodeRejected) {
  std::string text = read_all(kGermanPath);
  const auto pos = text.find("A11");
  text.replace(pos, 3, "A19");
  std::istringstream in(text);
  EXPECT_THROW(parse_german(in), DataError);
}

TEST(LoadGerman, BadLabelRejected) {
  std::string text = read_all(kGermanPath);
  const auto eol = text.find('\n');
  text[eol - 1] = '3';
  std::istringstream in(text);
  EXPECT_THROW(parse_german(in), DataError);
}

TEST(LoadGerman, MissingFile) { EXPECT_THROW(load_german("/nonexistent/german.data"), DataError); }

TEST(OneHot, FiftyNineUniqueColumns) {
  const Dataset& d = german();
  EXPECT_EQ(d.cols(), 59u);
  EXPECT_EQ(d.rows(), 1000u);
  const std::set<std::string> names(d.names().begin(), d.names().end());
  EXPECT_EQ(names.size(), 59u);
  EXPECT_TRUE(d.column_index("A11").has_value());
  EXPECT_TRUE(d.column_index("credit_amount").has_value());
  EXPECT_FALSE(d.column_index("A47").has_value());  // never observed
}

TEST(OneHot, IndicatorsSumToOnePerAttribute) {
  const Dataset& d = german();
  for (const AttributeSpec& a : german_catalog()) {
    if (a.kind != AttributeKind::categorical || a.codes.size() <= 2) continue;
    std::vector<std::size_t> cols;
    for (const auto& code : a.codes) {
      if (auto c = d.column_index(code)) cols.push_back(*c);
    }
    for (std::size_t r = 0; r < d.rows(); ++r) {
      double s = 0.0;
      for (std::size_t c : cols) s += d.features()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      ASSERT_EQ(s, 1.0) << a.key << " row " << r;
    }
  }
}

TEST(OneHot, RankDeficient) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(german().features());
  EXPECT_LT(qr.rank(), 59);
}

TEST(OneHot, DeterministicColumnOrder) {
  const Dataset again = one_hot_encode(load_german(kGermanPath));
  EXPECT_EQ(again, german());
}

TEST(SelectColumns, Mapping) {
  const Dataset& d = german();
  EXPECT_EQ(select_columns(d, Bitstring::ones(59)), d);
  const Dataset none = select_columns(d, Bitstring::zeros(59));
  EXPECT_EQ(none.cols(), 0u);
  EXPECT_EQ(none.labels(), d.labels());
  const Dataset one = select_columns(d, Bitstring::zeros(59).with(7, true));
  ASSERT_EQ(one.cols(), 1u);
  EXPECT_EQ(one.names()[0], d.names()[7]);
  EXPECT_THROW(select_columns(d, Bitstring::zeros(10)), std::invalid_argument);
}

TEST(Pearson, KnownValues) {
  std::vector<double> x{1, 2, 3, 4, 5}, y2, yn;
  for (double v : x) {
    y2.push_back(2 * v);
    yn.push_back(-v);
  }
  EXPECT_NEAR(*pearson(x, y2), 1.0, 1e-15);
  EXPECT_NEAR(*pearson(x, yn), -1.0, 1e-15);
  EXPECT_FALSE(pearson(x, std::vector<double>(5, 3.0)).has_value());
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
}

TEST(Pearson, IndependentNoiseIsSmall) {
  Rng rng(1);
  std::vector<double> a(10000), b(10000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = rng.normal();
    b[i] = rng.normal();
  }
  EXPECT_LT(std::abs(*pearson(a, b)), 0.05);
}

TEST(Split, SeededAndCriterionHolds) {
  const SplitPair a = split(german(), 0.5, 3, 5000);
  const SplitPair b = split(german(), 0.5, 3, 5000);
  EXPECT_EQ(a.train_rows, b.train_rows);
  EXPECT_EQ(a.train.rows(), 500u);
  EXPECT_EQ(a.test.rows(), 500u);
  std::set<std::size_t> all(a.train_rows.begin(), a.train_rows.end());
  for (std::size_t r : a.test_rows) EXPECT_FALSE(all.count(r));
  EXPECT_TRUE(a.report.accepted);
  for (const auto& f : a.report.features) {
    if (f.checked) EXPECT_LE(f.difference, 0.10) << f.name;
  }
}

TEST(Split, RetriesExhaustedNamesWorstFeature) {
  SplitCriterion strict{1e-9, DifferenceMode::absolute, 0.0};
  try {
    split(german(), 0.5, 1, 3, strict);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("worst"), std::string::npos) << e.what();
  }
}

TEST(Split, DuplicatedHalvesHaveZeroDifference) {
  const Dataset& d = german();
  std::vector<std::size_t> first(100), both;
  for (std::size_t i = 0; i < 100; ++i) first[i] = i;
  both = first;
  both.insert(both.end(), first.begin(), first.end());
  const Dataset half = d.take_rows(first);
  const PearsonReport rep = pearson_report(half, half, {0.10, DifferenceMode::relative, 0.05});
  EXPECT_TRUE(rep.accepted);
  EXPECT_EQ(rep.worst_difference, 0.0);
}

TEST(Split, RejectsBadRatio) {
  EXPECT_THROW(split(german(), 0.0, 1, 1), std::invalid_argument);
  EXPECT_THROW(split(german(), 1.0, 1, 1), std::invalid_argument);
}

TEST(DatasetCsv, RoundTripExact) {
  const Dataset& d = german();
  std::stringstream ss;
  write_dataset_csv(d, ss);
  EXPECT_EQ(read_dataset_csv(ss), d);
}

TEST(SplitManifest, ContainsRowsAndSeed) {
  const SplitPair p = split(german(), 0.5, 3, 5000);
  const std::string j = split_manifest_json(p, {}, 0.5);
  EXPECT_NE(j.find("\"seed\""), std::string::npos);
  EXPECT_NE(j.find("\"train_rows\""), std::string::npos);
}

TEST(ReferenceFeatures, AllPresentInEncoding) {
  ASSERT_EQ(reference_top20_features().size(), 20u);
  for (const auto& name : reference_top20_features()) {
    EXPECT_TRUE(german().column_index(name).has_value()) << name;
  }
}

}  // namespace
}  // namespace qfs
