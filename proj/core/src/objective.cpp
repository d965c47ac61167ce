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

#include "qfs/objective.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

namespace qfs {

std::optional<double> ObjectiveCache::find(const Bitstring& x) const {
  std::shared_lock lock(mutex_);
  auto it = scores_.find(x);
  if (it == scores_.end()) return std::nullopt;
  ++hits_;
  return it->second;
}

double ObjectiveCache::insert(const Bitstring& x, double score) {
  std::unique_lock lock(mutex_);
  auto [it, inserted] = scores_.emplace(x, score);
  if (inserted) ++misses_;
  return it->second;
}

std::size_t ObjectiveCache::size() const {
  std::shared_lock lock(mutex_);
  return scores_.size();
}

std::vector<std::pair<Bitstring, double>> ObjectiveCache::entries() const {
  std::vector<std::pair<Bitstring, double>> out;
  {
    std::shared_lock lock(mutex_);
    out.assign(scores_.begin(), scores_.end());
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void ObjectiveCache::write_csv(std::ostream& os) const {
  os << "bitstring,score\n" << std::setprecision(17);
  for (const auto& [x, score] : entries()) os << x.str() << ',' << score << '\n';
}

std::size_t ObjectiveCache::read_csv(std::istream& is) {
  std::string line;
  std::size_t count = 0;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.rfind("bitstring", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("cache CSV line " + std::to_string(line_no) + ": missing comma");
    }
    insert(Bitstring::parse(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    ++count;
  }
  return count;
}

double BlackBoxObjective::operator()(const Bitstring& x) const {
  if (x.size() != dimension()) {
    throw ObjectiveError(x, "expected " + std::to_string(dimension()) + " bits");
  }
  if (auto hit = cache_.find(x)) return *hit;
  double score;
  try {
    score = compute(x);
  } catch (const ObjectiveError&) {
    throw;
  } catch (const std::exception& e) {
    throw ObjectiveError(x, e.what());
  }
  if (!std::isfinite(score)) throw ObjectiveError(x, "non-finite score");
  return cache_.insert(x, score);
}

FunctionObjective::FunctionObjective(std::size_t n, std::function<double(const Bitstring&)> fn,
                                     ScoreBounds bounds)
    : n_(n), fn_(std::move(fn)), bounds_(bounds) {}

SubsetObjective::SubsetObjective(Dataset train, LogRegConfig config, double f_max)
    : train_(std::move(train)), config_(config), f_max_(f_max) {
  if (train_.cols() > kMaxBits) throw std::invalid_argument("more than 64 candidate features");
}

double SubsetObjective::compute(const Bitstring& x) const {
  return train_score(x, train_, config_);
}

TestScoreObjective::TestScoreObjective(Dataset train, Dataset test, LogRegConfig config)
    : train_(std::move(train)), test_(std::move(test)), config_(config) {
  if (train_.names() != test_.names()) throw std::invalid_argument("train/test columns differ");
}

double TestScoreObjective::compute(const Bitstring& x) const {
  return test_score(x, train_, test_, config_);
}

double train_score(const Bitstring& subset, const Dataset& train, const LogRegConfig& config) {
  const Dataset sel = select_columns(train, subset);
  const LogRegModel model = train_logreg(sel.features(), sel.labels(), config);
  return log_loss(model, sel.features(), sel.labels());
}

double test_score(const Bitstring& subset, const Dataset& train_data, const Dataset& test_data,
                  const LogRegConfig& config) {
  const Dataset tr = select_columns(train_data, subset);
  const Dataset te = select_columns(test_data, subset);
  const LogRegModel model = train_logreg(tr.features(), tr.labels(), config);
  return log_loss(model, te.features(), te.labels());
}

}  // namespace qfs
