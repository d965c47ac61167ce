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

#include "qfs/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qfs/rng.hpp"

namespace qfs {

namespace {

AttributeSpec categorical(std::string key, std::string description,
                          std::vector<std::string> codes, std::string collapse_to = {}) {
  return {std::move(key), std::move(description), AttributeKind::categorical, std::move(codes),
          std::move(collapse_to)};
}

AttributeSpec numeric(std::string key, std::string description) {
  return {std::move(key), std::move(description), AttributeKind::numeric, {}, {}};
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_number(const std::string& token, double& value) {
  try {
    std::size_t used = 0;
    value = std::stod(token, &used);
    return used == token.size() && std::isfinite(value);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

const std::vector<AttributeSpec>& german_catalog() {
  static const std::vector<AttributeSpec> catalog = {
      categorical("checking_account", "Status of existing checking account",
                  {"A11", "A12", "A13", "A14"}),
      numeric("duration_months", "Duration in month"),
      categorical("credit_history", "Credit history", {"A30", "A31", "A32", "A33", "A34"}),
      categorical("purpose", "Purpose",
                  {"A40", "A41", "A42", "A43", "A44", "A45", "A46", "A47", "A48", "A49", "A410"}),
      numeric("credit_amount", "Credit amount"),
      categorical("savings", "Savings account/bonds", {"A61", "A62", "A63", "A64", "A65"}),
      categorical("employment_since", "Present employment since",
                  {"A71", "A72", "A73", "A74", "A75"}),
      numeric("installment_rate", "Installment rate in percentage of disposable income"),
      categorical("personal_status", "Personal status and sex",
                  {"A91", "A92", "A93", "A94", "A95"}),
      categorical("other_debtors", "Other debtors / guarantors", {"A101", "A102", "A103"}),
      numeric("residence_since", "Present residence since"),
      categorical("property", "Property", {"A121", "A122", "A123", "A124"}),
      numeric("age_years", "Age in years"),
      categorical("other_installment_plans", "Other installment plans",
                  {"A141", "A142", "A143"}),
      categorical("housing", "Housing", {"A151", "A152", "A153"}),
      numeric("existing_credits", "Number of existing credits at this bank"),
      categorical("job", "Job", {"A171", "A172", "A173", "A174"}),
      numeric("people_liable", "Number of people being liable to provide maintenance for"),
      categorical("telephone", "Telephone", {"A191", "A192"}, "A192"),
      categorical("foreign_worker", "Foreign worker", {"A201", "A202"}, "A201"),
  };
  return catalog;
}

RawDataset load_german(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file '" + path + "'");
  return parse_german(in);
}

RawDataset parse_german(std::istream& is, std::size_t expected_rows) {
  const auto& catalog = german_catalog();
  RawDataset raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::vector<std::string> tokens = split_ws(line);
    if (tokens.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (tokens.size() != catalog.size() + 1) {
      throw DataError(where + "expected " + std::to_string(catalog.size() + 1) +
                      " fields, found " + std::to_string(tokens.size()));
    }
    for (std::size_t a = 0; a < catalog.size(); ++a) {
      const AttributeSpec& spec = catalog[a];
      if (spec.kind == AttributeKind::categorical) {
        if (std::find(spec.codes.begin(), spec.codes.end(), tokens[a]) == spec.codes.end()) {
          throw DataError(where + "unknown category code '" + tokens[a] + "' for attribute " +
                          spec.key);
        }
      } else {
        double v = 0.0;
        if (!parse_number(tokens[a], v)) {
          throw DataError(where + "attribute " + spec.key + " is not numeric: '" + tokens[a] +
                          "'");
        }
      }
    }
    const std::string& label = tokens.back();
    if (label != "1" && label != "2") {
      throw DataError(where + "label must be 1 (good) or 2 (bad), found '" + label + "'");
    }
    raw.labels.push_back(label == "1" ? 1 : 0);
    tokens.pop_back();
    raw.cells.push_back(std::move(tokens));
  }
  if (expected_rows != 0 && raw.rows() != expected_rows) {
    throw DataError("expected " + std::to_string(expected_rows) + " rows, input ends at line " +
                    std::to_string(line_no) + " after " + std::to_string(raw.rows()) + " rows");
  }
  return raw;
}

Dataset::Dataset(Eigen::MatrixXd features, Eigen::VectorXd labels, std::vector<std::string> names)
    : features_(std::move(features)), labels_(std::move(labels)), names_(std::move(names)) {
  if (features_.rows() != labels_.size()) throw DataError("feature/label row count mismatch");
  if (static_cast<std::size_t>(features_.cols()) != names_.size()) {
    throw DataError("feature/name column count mismatch");
  }
  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DataError("duplicate feature names");
  }
}

std::optional<std::size_t> Dataset::column_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

Dataset Dataset::take_rows(std::span<const std::size_t> rows) const {
  Eigen::MatrixXd f(static_cast<Eigen::Index>(rows.size()), features_.cols());
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= this->rows()) throw std::out_of_range("row index out of range");
    f.row(static_cast<Eigen::Index>(i)) = features_.row(static_cast<Eigen::Index>(rows[i]));
    y[static_cast<Eigen::Index>(i)] = labels_[static_cast<Eigen::Index>(rows[i])];
  }
  return Dataset(std::move(f), std::move(y), names_);
}

Dataset Dataset::take_columns(std::span<const std::size_t> cols) const {
  Eigen::MatrixXd f(features_.rows(), static_cast<Eigen::Index>(cols.size()));
  std::vector<std::string> names;
  names.reserve(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= this->cols()) throw std::out_of_range("column index out of range");
    f.col(static_cast<Eigen::Index>(j)) = features_.col(static_cast<Eigen::Index>(cols[j]));
    names.push_back(names_[cols[j]]);
  }
  return Dataset(std::move(f), labels_, std::move(names));
}

Dataset one_hot_encode(const RawDataset& raw, bool expect_german_width) {
  const auto& catalog = german_catalog();
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  for (std::size_t a = 0; a < catalog.size(); ++a) {
    const AttributeSpec& spec = catalog[a];
    if (spec.kind == AttributeKind::numeric) {
      std::vector<double> col(raw.rows());
      for (std::size_t r = 0; r < raw.rows(); ++r) col[r] = std::stod(raw.cells[r][a]);
      names.push_back(spec.key);
      columns.push_back(std::move(col));
      continue;
    }
    auto indicator = [&](const std::string& code) {
      std::vector<double> col(raw.rows());
      for (std::size_t r = 0; r < raw.rows(); ++r) col[r] = raw.cells[r][a] == code ? 1.0 : 0.0;
      return col;
    };
    if (!spec.collapse_to.empty()) {
      names.push_back(spec.collapse_to);
      columns.push_back(indicator(spec.collapse_to));
      continue;
    }
    for (const std::string& code : spec.codes) {
      const bool present = std::any_of(raw.cells.begin(), raw.cells.end(),
                                       [&](const auto& row) { return row[a] == code; });
      if (!present) continue;
      names.push_back(code);
      columns.push_back(indicator(code));
    }
  }
  if (expect_german_width && columns.size() != kGermanEncodedColumns) {
    throw DataError("one-hot encoding produced " + std::to_string(columns.size()) +
                    " columns, expected " + std::to_string(kGermanEncodedColumns));
  }
  Eigen::MatrixXd f(static_cast<Eigen::Index>(raw.rows()),
                    static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (std::size_t r = 0; r < raw.rows(); ++r) {
      f(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = columns[j][r];
    }
  }
  Eigen::VectorXd y(static_cast<Eigen::Index>(raw.rows()));
  for (std::size_t r = 0; r < raw.rows(); ++r) {
    y[static_cast<Eigen::Index>(r)] = raw.labels[r];
  }
  return Dataset(std::move(f), std::move(y), std::move(names));
}

Dataset select_columns(const Dataset& data, const Bitstring& subset) {
  if (subset.size() != data.cols()) {
    throw std::invalid_argument("subset has " + std::to_string(subset.size()) +
                                " bits, dataset has " + std::to_string(data.cols()) + " columns");
  }
  std::vector<std::size_t> cols;
  for (std::size_t l = 0; l < subset.size(); ++l) {
    if (subset.test(l)) cols.push_back(l);
  }
  return data.take_columns(cols);
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("pearson: need at least two observations");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& y) {
  return pearson(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
                 std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
}

PearsonReport pearson_report(const Dataset& train, const Dataset& test,
                             const SplitCriterion& criterion) {
  if (train.names() != test.names()) throw std::invalid_argument("train/test columns differ");
  PearsonReport report;
  for (std::size_t j = 0; j < train.cols(); ++j) {
    FeatureCorrelation fc;
    fc.name = train.names()[j];
    const Eigen::VectorXd a = train.features().col(static_cast<Eigen::Index>(j));
    const Eigen::VectorXd b = test.features().col(static_cast<Eigen::Index>(j));
    fc.train = pearson(a, train.labels());
    fc.test = pearson(b, test.labels());
    if (fc.train && fc.test) {
      const double larger = std::max(std::abs(*fc.train), std::abs(*fc.test));
      const double gap = std::abs(*fc.train - *fc.test);
      fc.difference = criterion.mode == DifferenceMode::absolute ? gap
                      : larger > 0.0                             ? gap / larger
                                                                 : 0.0;
      fc.checked = larger >= criterion.guard;
      fc.within = !fc.checked || fc.difference <= criterion.tolerance;
      if (fc.checked && fc.difference > report.worst_difference) {
        report.worst_difference = fc.difference;
        report.worst_feature = fc.name;
      }
    }
    report.accepted = report.accepted && fc.within;
    report.features.push_back(std::move(fc));
  }
  return report;
}

SplitPair split(const Dataset& data, double ratio, std::uint64_t seed, std::size_t max_retries,
                const SplitCriterion& criterion) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("split ratio must be in (0, 1)");
  const std::size_t n = data.rows();
  const auto n_train = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
  if (n_train == 0 || n_train == n) throw std::invalid_argument("split leaves an empty side");
  PearsonReport worst;
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(max_retries, 1); ++attempt) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(derive_seed(seed, {attempt}));
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    std::vector<std::size_t> train_rows(order.begin(), order.begin() + static_cast<long>(n_train));
    std::vector<std::size_t> test_rows(order.begin() + static_cast<long>(n_train), order.end());
    std::sort(train_rows.begin(), train_rows.end());
    std::sort(test_rows.begin(), test_rows.end());
    SplitPair pair;
    pair.train = data.take_rows(train_rows);
    pair.test = data.take_rows(test_rows);
    pair.report = pearson_report(pair.train, pair.test, criterion);
    if (pair.report.accepted) {
      pair.train_rows = std::move(train_rows);
      pair.test_rows = std::move(test_rows);
      pair.seed = seed;
      pair.attempts = attempt + 1;
      return pair;
    }
    if (attempt == 0 || pair.report.worst_difference < worst.worst_difference) {
      worst = std::move(pair.report);
    }
  }
  std::ostringstream msg;
  msg << "no split met the correlation criterion after " << max_retries
      << " attempts; best attempt's worst feature " << worst.worst_feature << " differs by "
      << worst.worst_difference;
  throw DataError(msg.str());
}

void write_dataset_csv(const Dataset& data, std::ostream& os) {
  for (const std::string& name : data.names()) os << name << ',';
  os << "label\n";
  os << std::setprecision(17);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const auto ri = static_cast<Eigen::Index>(r);
    for (std::size_t c = 0; c < data.cols(); ++c) {
      os << data.features()(ri, static_cast<Eigen::Index>(c)) << ',';
    }
    os << data.labels()[ri] << '\n';
  }
}

Dataset read_dataset_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells = split_csv(line);
    if (header.empty()) {
      header = std::move(cells);
      continue;
    }
    if (cells.size() != header.size()) {
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(cells.size()));
    }
    std::vector<double> values(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_number(cells[c], values[c])) {
        throw DataError("line " + std::to_string(line_no) + ": non-numeric value '" + cells[c] +
                        "'");
      }
    }
    rows.push_back(std::move(values));
  }
  auto label_it = std::find(header.begin(), header.end(), "label");
  if (label_it == header.end()) throw DataError("CSV header has no 'label' column");
  const auto label_col = static_cast<std::size_t>(label_it - header.begin());
  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != label_col) names.push_back(header[c]);
  }
  Eigen::MatrixXd f(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(names.size()));
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Eigen::Index out = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == label_col) {
        const double label = rows[r][c];
        if (label != 0.0 && label != 1.0) {
          throw DataError("row " + std::to_string(r + 1) + ": label must be 0 or 1");
        }
        y[static_cast<Eigen::Index>(r)] = label;
      } else {
        f(static_cast<Eigen::Index>(r), out++) = rows[r][c];
      }
    }
  }
  return Dataset(std::move(f), std::move(y), std::move(names));
}

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset CSV '" + path + "'");
  return read_dataset_csv(in);
}

std::string split_manifest_json(const SplitPair& pair, const SplitCriterion& criterion,
                                double ratio) {
  nlohmann::ordered_json j;
  j["seed"] = pair.seed;
  j["ratio"] = ratio;
  j["attempts"] = pair.attempts;
  j["criterion"] = {
      {"tolerance", criterion.tolerance},
      {"mode", criterion.mode == DifferenceMode::absolute ? "absolute" : "relative"},
      {"guard", criterion.guard}};
  j["train_rows"] = pair.train_rows;
  j["test_rows"] = pair.test_rows;
  auto& features = j["pearson"] = nlohmann::ordered_json::array();
  for (const FeatureCorrelation& fc : pair.report.features) {
    nlohmann::ordered_json f;
    f["feature"] = fc.name;
    f["train"] = fc.train ? nlohmann::ordered_json(*fc.train) : nlohmann::ordered_json(nullptr);
    f["test"] = fc.test ? nlohmann::ordered_json(*fc.test) : nlohmann::ordered_json(nullptr);
    f["difference"] = fc.difference;
    f["checked"] = fc.checked;
    features.push_back(std::move(f));
  }
  j["worst_feature"] = pair.report.worst_feature;
  j["worst_difference"] = pair.report.worst_difference;
  return j.dump(2);
}

const std::vector<std::string>& reference_top20_features() {
  static const std::vector<std::string> names = {
      "A11",  "A65",  "A71",  "A72",  "A74",  "A93",  "A102", "A103", "A124", "A141",
      "A143", "A151", "A153", "A152", "A75",  "A94",  "A32",  "residence_since", "A174", "A142"};
  return names;
}

}  // namespace qfs
