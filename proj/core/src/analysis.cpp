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

#include "qfs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "qfs/rng.hpp"

namespace qfs {
namespace {

CdfCurve accumulate(const std::map<double, double>& mass, double total) {
  CdfCurve c;
  double run = 0.0;
  for (const auto& [score, m] : mass) {
    run += m;
    c.points.push_back({score, run / total});
  }
  if (!c.points.empty()) c.points.back().cumulative = 1.0;
  return c;
}

std::vector<std::size_t> draw_rows(std::size_t rows, std::size_t take, Rng& rng) {
  std::vector<std::size_t> idx(rows);
  for (std::size_t i = 0; i < rows; ++i) idx[i] = i;
  // Partial Fisher-Yates: the first `take` slots are a uniform subset.
  for (std::size_t i = 0; i < take; ++i) std::swap(idx[i], idx[i + rng.below(rows - i)]);
  idx.resize(take);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::size_t fraction_rows(std::size_t rows, double fraction) {
  const auto take = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(rows)));
  if (take == 0) throw std::invalid_argument("subsample fraction leaves no rows");
  return take;
}

bool single_class(const Dataset& d) {
  const double pos = d.labels().sum();
  return pos == 0.0 || pos == static_cast<double>(d.rows());
}

struct SplitScores {
  double train;
  double test;
};

SplitScores fit_and_score(const Bitstring& subset, const Dataset& train, const Dataset& test,
                          const LogRegConfig& model) {
  const Dataset tr = select_columns(train, subset);
  const Dataset te = select_columns(test, subset);
  const LogRegModel m = train_logreg(tr.features(), tr.labels(), model);
  return {log_loss(m, tr.features(), tr.labels()), log_loss(m, te.features(), te.labels())};
}

}  // namespace

double CdfCurve::mass_at_or_below(double threshold) const {
  double m = 0.0;
  for (const CdfPoint& p : points) {
    if (p.score > threshold) break;
    m = p.cumulative;
  }
  return m;
}

CdfCurve cdf(const SampleSet& samples, const BlackBoxObjective& objective) {
  if (samples.total_shots() == 0) throw std::invalid_argument("cdf of an empty sample set");
  std::map<double, double> mass;
  for (const auto& [word, count] : samples.counts()) {
    mass[objective(Bitstring(word, samples.n_qubits()))] += static_cast<double>(count);
  }
  return accumulate(mass, static_cast<double>(samples.total_shots()));
}

CdfCurve uniform_cdf(const RankedSubsets& ranked) {
  if (ranked.entries.empty()) throw std::invalid_argument("cdf of an empty ranking");
  std::map<double, double> mass;
  for (const auto& e : ranked.entries) mass[e.second] += 1.0;
  return accumulate(mass, static_cast<double>(ranked.entries.size()));
}

void write_cdf_csv(const CdfCurve& curve, std::ostream& os) {
  const auto old = os.precision(17);
  os << "score,cumulative\n";
  for (const CdfPoint& p : curve.points) os << p.score << ',' << p.cumulative << '\n';
  os.precision(old);
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty set");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("percentile: q outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

BootstrapResult bootstrap_ci(const Bitstring& subset, const Dataset& train, const Dataset& test,
                             const BootstrapConfig& config, const LogRegConfig& model) {
  if (config.resamples < 2) throw std::invalid_argument("bootstrap needs at least 2 resamples");
  if (!(config.level > 0.0 && config.level < 1.0)) throw std::invalid_argument("level in (0,1)");
  const std::size_t take_train = fraction_rows(train.rows(), config.fraction);
  const std::size_t take_test = fraction_rows(test.rows(), config.fraction);

  BootstrapResult out;
  std::vector<double> tr_scores, te_scores;
  std::uint64_t draw = 0;
  while (tr_scores.size() < config.resamples) {
    Rng rng(derive_seed(config.seed, {draw++}));
    const Dataset tr = train.take_rows(draw_rows(train.rows(), take_train, rng));
    const Dataset te = test.take_rows(draw_rows(test.rows(), take_test, rng));
    if (single_class(tr)) {
      if (++out.redraws > config.max_redraws) {
        throw std::runtime_error("bootstrap: too many single-class subsamples");
      }
      continue;
    }
    const SplitScores s = fit_and_score(subset, tr, te, model);
    tr_scores.push_back(s.train);
    te_scores.push_back(s.test);
  }
  const double tail = (1.0 - config.level) / 2.0;
  out.train = {percentile(tr_scores, tail), percentile(tr_scores, 1.0 - tail)};
  out.test = {percentile(te_scores, tail), percentile(te_scores, 1.0 - tail)};
  return out;
}

WinFractions paired_compare(const Bitstring& a, const Bitstring& b, const Dataset& train,
                            const Dataset& test, const PairedConfig& config,
                            const LogRegConfig& model) {
  if (config.trials < 1) throw std::invalid_argument("paired_compare needs trials >= 1");
  const std::size_t take_train = fraction_rows(train.rows(), config.fraction);
  const std::size_t take_test = fraction_rows(test.rows(), config.fraction);
  std::size_t wins_train = 0, wins_test = 0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    Rng rng(derive_seed(config.seed, {t}));
    const Dataset tr = train.take_rows(draw_rows(train.rows(), take_train, rng));
    const Dataset te = test.take_rows(draw_rows(test.rows(), take_test, rng));
    const SplitScores sa = fit_and_score(a, tr, te, model);
    const SplitScores sb = fit_and_score(b, tr, te, model);
    wins_train += sa.train < sb.train;
    wins_test += sa.test < sb.test;
  }
  const auto n = static_cast<double>(config.trials);
  return {static_cast<double>(wins_train) / n, static_cast<double>(wins_test) / n, 1};
}

std::vector<Bitstring> top_k_sampled(const SampleSet& samples,
                                     const BlackBoxObjective& train_objective, std::size_t k) {
  std::vector<std::pair<double, std::uint64_t>> scored;
  for (const auto& [word, count] : samples.counts()) {
    scored.emplace_back(train_objective(Bitstring(word, samples.n_qubits())), word);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<Bitstring> out;
  for (std::size_t i = 0; i < std::min(k, scored.size()); ++i) {
    out.emplace_back(scored[i].second, samples.n_qubits());
  }
  return out;
}

WinFractions top_k_average_compare(const SampleSet& samples,
                                   const BlackBoxObjective& train_objective,
                                   const Bitstring& classical, const Dataset& train,
                                   const Dataset& test, std::size_t k, const PairedConfig& config,
                                   const LogRegConfig& model) {
  if (samples.total_shots() == 0) throw std::invalid_argument("empty sample set");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const std::vector<Bitstring> top = top_k_sampled(samples, train_objective, k);
  WinFractions avg;
  for (const Bitstring& s : top) {
    const WinFractions w = paired_compare(s, classical, train, test, config, model);
    avg.train += w.train;
    avg.test += w.test;
  }
  avg.train /= static_cast<double>(top.size());
  avg.test /= static_cast<double>(top.size());
  avg.compared = top.size();
  return avg;
}

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i > j) std::swap(i, j);
  if (i == j || j >= n) throw std::out_of_range("pair_index: need i != j < n");
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

double QuboModel::pair(std::size_t i, std::size_t j) const {
  return pairwise(static_cast<Eigen::Index>(pair_index(i, j, n)));
}

QuboModel qubo_fit(std::span<const double> table, std::size_t n) {
  if (n > kExhaustiveCap) throw std::length_error("qubo_fit: n exceeds the exhaustive cap");
  const std::size_t total = std::size_t{1} << n;
  if (table.size() != total) throw std::invalid_argument("qubo_fit: table size is not 2^n");
  const std::size_t np = n * (n - (n > 0 ? 1 : 0)) / 2;

  // Walsh coefficients with z_i = 1 - 2 x_i.
  double a0 = 0.0;
  Eigen::VectorXd a1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd a2 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(np));
  std::vector<double> z(n);
  for (std::size_t w = 0; w < total; ++w) {
    const double f = table[w];
    a0 += f;
    for (std::size_t i = 0; i < n; ++i) z[i] = ((w >> i) & 1u) ? -1.0 : 1.0;
    std::size_t p = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fz = f * z[i];
      a1(static_cast<Eigen::Index>(i)) += fz;
      for (std::size_t j = i + 1; j < n; ++j) a2(static_cast<Eigen::Index>(p++)) += fz * z[j];
    }
  }
  const auto inv = 1.0 / static_cast<double>(total);
  a0 *= inv;
  a1 *= inv;
  a2 *= inv;

  // Back to the 0/1 basis.
  QuboModel m;
  m.n = n;
  m.offset = a0 + a1.sum() + a2.sum();
  m.linear = -2.0 * a1;
  m.pairwise = 4.0 * a2;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) m.linear(static_cast<Eigen::Index>(i)) -= 2.0 * a2(static_cast<Eigen::Index>(pair_index(i, j, n)));
    }
  }

  double sq = 0.0;
  for (std::size_t w = 0; w < total; ++w) {
    const double r = table[w] - qubo_eval(m, Bitstring(w, n));
    sq += r * r;
  }
  m.mse = sq * inv;
  return m;
}

QuboModel qubo_fit(const BlackBoxObjective& objective, std::size_t cap) {
  const std::size_t n = objective.dimension();
  if (n > cap) throw std::length_error("qubo_fit: n exceeds the exhaustive cap");
  const std::size_t total = std::size_t{1} << n;
  std::vector<double> table(total);
  for (std::size_t w = 0; w < total; ++w) table[w] = objective(Bitstring(w, n));
  return qubo_fit(table, n);
}

double qubo_eval(const QuboModel& model, const Bitstring& x) {
  if (x.size() != model.n) throw std::invalid_argument("qubo_eval: bitstring length mismatch");
  double v = model.offset;
  std::size_t p = 0;
  for (std::size_t i = 0; i < model.n; ++i) {
    const bool xi = x.test(i);
    if (xi) v += model.linear(static_cast<Eigen::Index>(i));
    for (std::size_t j = i + 1; j < model.n; ++j, ++p) {
      if (xi && x.test(j)) v += model.pairwise(static_cast<Eigen::Index>(p));
    }
  }
  return v;
}

std::string qubo_to_json(const QuboModel& model) {
  nlohmann::ordered_json j;
  j["n"] = model.n;
  j["offset"] = model.offset;
  j["linear"] = std::vector<double>(model.linear.data(), model.linear.data() + model.linear.size());
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < model.n; ++i) {
    for (std::size_t jj = i + 1; jj < model.n; ++jj) {
      pairs.push_back({i, jj, model.pair(i, jj)});
    }
  }
  j["pairwise"] = pairs;
  j["mse"] = model.mse;
  return j.dump(2);
}

}  // namespace qfs
