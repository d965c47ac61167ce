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

#include "qfs/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>

#include "qfs/rng.hpp"

namespace qfs {

RankedSubsets exhaustive(const BlackBoxObjective& objective, std::size_t cap) {
  const std::size_t n = objective.dimension();
  if (n > cap || n >= kMaxBits) {
    throw std::length_error("exhaustive search over " + std::to_string(n) +
                            " bits exceeds the cap of " + std::to_string(cap));
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  RankedSubsets out;
  out.entries.reserve(total);
  for (std::uint64_t w = 0; w < total; ++w) {
    const Bitstring b(w, n);
    out.entries.emplace_back(b, objective(b));
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first.word() < b.first.word();
  });
  return out;
}

Eigen::VectorXd feature_importance(const LogRegModel& model) { return model.weights.cwiseAbs(); }

EliminationTrace rfe(const Dataset& train, std::size_t target_k, const LogRegConfig& config) {
  const std::size_t n = train.cols();
  if (target_k < 1 || target_k > n) {
    throw std::invalid_argument("rfe: target size must lie in [1, " + std::to_string(n) + "]");
  }
  if (n > kMaxBits) throw std::length_error("rfe: too many columns");
  std::vector<std::size_t> alive(n);
  std::iota(alive.begin(), alive.end(), 0);

  EliminationTrace trace;
  trace.n_features = n;
  while (alive.size() > target_k) {
    const Dataset sel = train.take_columns(alive);
    const LogRegModel model = train_logreg(sel.features(), sel.labels(), config);
    const Eigen::VectorXd imp = feature_importance(model);
    // alive is ascending, so the first minimum is the lowest column index.
    Eigen::Index worst = 0;
    for (Eigen::Index k = 1; k < imp.size(); ++k) {
      if (imp(k) < imp(worst)) worst = k;
    }
    trace.steps.push_back({alive[static_cast<std::size_t>(worst)], alive.size(),
                           log_loss(model, sel.features(), sel.labels())});
    alive.erase(alive.begin() + worst);
  }
  Bitstring subset = Bitstring::zeros(n);
  for (std::size_t c : alive) subset = subset.with(c, true);
  trace.final_subset = subset;
  return trace;
}

std::vector<std::size_t> feature_ranking(const Dataset& train, const LogRegConfig& config) {
  const EliminationTrace trace = rfe(train, 1, config);
  std::vector<std::size_t> ranking;
  for (std::size_t c = 0; c < trace.n_features; ++c) {
    if (trace.final_subset.test(c)) ranking.push_back(c);
  }
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) ranking.push_back(it->removed);
  return ranking;
}

Bitstring top_k_subset(const std::vector<std::size_t>& ranking, std::size_t k, std::size_t width) {
  if (k > ranking.size()) throw std::invalid_argument("top_k_subset: k exceeds ranking length");
  Bitstring b = Bitstring::zeros(width);
  for (std::size_t i = 0; i < k; ++i) b = b.with(ranking[i], true);
  return b;
}

Scoring parse_scoring(std::string_view name) {
  if (name == "log_loss" || name == "log") return Scoring::log_loss;
  if (name == "accuracy" || name == "acc") return Scoring::accuracy;
  throw std::invalid_argument("unknown scoring '" + std::string(name) + "'");
}

std::vector<std::size_t> stratified_folds(const Eigen::VectorXd& labels, std::size_t folds,
                                          std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("need at least 2 folds");
  std::vector<std::size_t> assignment(static_cast<std::size_t>(labels.size()));
  for (int cls = 0; cls < 2; ++cls) {
    std::vector<std::size_t> rows;
    for (Eigen::Index i = 0; i < labels.size(); ++i) {
      if ((labels(i) > 0.5) == (cls == 1)) rows.push_back(static_cast<std::size_t>(i));
    }
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(cls)}));
    for (std::size_t i = rows.size(); i > 1; --i) {
      std::swap(rows[i - 1], rows[rng.below(i)]);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) assignment[rows[i]] = i % folds;
  }
  return assignment;
}

RfecvResult rfecv(const Dataset& train, Scoring scoring, std::size_t folds, std::uint64_t seed,
                  const LogRegConfig& config) {
  const std::size_t n = train.cols();
  const std::vector<std::size_t> fold_of = stratified_folds(train.labels(), folds, seed);

  std::vector<Dataset> fit_parts, val_parts;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<std::size_t> fit_rows, val_rows;
    for (std::size_t i = 0; i < fold_of.size(); ++i) (fold_of[i] == f ? val_rows : fit_rows).push_back(i);
    Dataset fit = train.take_rows(fit_rows);
    Dataset val = train.take_rows(val_rows);
    for (const Dataset* part : {&fit, &val}) {
      const double pos = part->labels().sum();
      if (part->rows() == 0 || pos == 0.0 || pos == static_cast<double>(part->rows())) {
        throw FoldError(f, part == &fit ? "training part has a single class"
                                        : "validation part has a single class");
      }
    }
    fit_parts.push_back(std::move(fit));
    val_parts.push_back(std::move(val));
  }

  RfecvResult result;
  result.ranking = feature_ranking(train, config);
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<std::size_t> cols(result.ranking.begin(), result.ranking.begin() + size);
    std::sort(cols.begin(), cols.end());
    double total = 0.0;
    for (std::size_t f = 0; f < folds; ++f) {
      const Dataset fit = fit_parts[f].take_columns(cols);
      const Dataset val = val_parts[f].take_columns(cols);
      const LogRegModel model = train_logreg(fit.features(), fit.labels(), config);
      total += scoring == Scoring::log_loss ? log_loss(model, val.features(), val.labels())
                                            : accuracy(model, val.features(), val.labels());
    }
    result.mean_scores.push_back(total / static_cast<double>(folds));
  }
  std::size_t best = 0;
  for (std::size_t s = 1; s < n; ++s) {
    const double v = result.mean_scores[s];
    const double b = result.mean_scores[best];
    // strict improvement only, so ties keep the smaller size
    if (scoring == Scoring::log_loss ? v < b : v > b) best = s;
  }
  result.best_size = best + 1;
  result.subset = top_k_subset(result.ranking, result.best_size, n);
  return result;
}

void write_ranked_csv(const RankedSubsets& ranked, std::ostream& os) {
  const auto old = os.precision(17);
  os << "rank,bitstring,score\n";
  for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
    os << i << ',' << ranked.entries[i].first.str() << ',' << ranked.entries[i].second << '\n';
  }
  os.precision(old);
}

void write_elimination_csv(const EliminationTrace& trace, const std::vector<std::string>& names,
                           std::ostream& os) {
  const auto old = os.precision(17);
  os << "step,removed,name,size,train_score\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    os << i << ',' << s.removed << ',' << (s.removed < names.size() ? names[s.removed] : "") << ','
       << s.size << ',' << s.train_score << '\n';
  }
  os << "final,," << trace.final_subset.str() << ",,\n";
  os.precision(old);
}

}  // namespace qfs
