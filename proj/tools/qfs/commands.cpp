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

#include "commands.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <sstream>

#include "artifacts.hpp"
#include "qfs/analysis.hpp"
#include "qfs/backend.hpp"
#include "qfs/baselines.hpp"
#include "qfs/circuit.hpp"
#include "qfs/dataset.hpp"
#include "qfs/objective.hpp"
#include "qfs/qnspsa.hpp"

namespace qfs::cli {
namespace fs = std::filesystem;

namespace {

std::uint64_t master_seed(const Json& config) {
  return unsigned_value(config.at("seed"), "seed");
}

fs::path or_default(const std::optional<fs::path>& p, const Paths& paths, const char* name) {
  return p ? *p : paths.out / name;
}

Dataset load_csv(const fs::path& path, const char* what) {
  if (!fs::exists(path)) {
    throw DataError(std::string("missing ") + what + " '" + path.string() +
                    "' (run `qfs ingest` first or pass its path)");
  }
  return read_dataset_csv(path.string());
}

std::vector<std::size_t> select_features(const Json& config, const Dataset& train) {
  const Json& f = config.at("features");
  const std::string mode = f.at("mode").get<std::string>();
  const std::size_t cols = train.cols();
  std::vector<std::size_t> chosen;

  auto checked_k = [&] {
    const auto k = count_at(config, "features", "k");
    if (k < 1 || k > cols) {
      throw UsageError("features.k must lie in [1, " + std::to_string(cols) + "]");
    }
    return k;
  };
  auto by_names = [&](const std::vector<std::string>& names) {
    for (const std::string& name : names) {
      const auto idx = train.column_index(name);
      if (!idx) throw UsageError("unknown feature name '" + name + "'");
      chosen.push_back(*idx);
    }
  };

  if (mode == "full") {
    chosen.resize(cols);
    std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  } else if (mode == "first_k") {
    chosen.resize(checked_k());
    std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  } else if (mode == "reduced") {
    const std::size_t k = checked_k();
    const auto ranking = feature_ranking(train, model_config(config));
    chosen.assign(ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(k));
  } else if (mode == "names") {
    by_names(f.at("names").get<std::vector<std::string>>());
  } else if (mode == "reference") {
    by_names(reference_top20_features());
  } else {
    throw UsageError("features.mode must be one of full, reduced, first_k, names, reference");
  }
  // Qubit l is feature l, in dataset column order.
  std::sort(chosen.begin(), chosen.end());
  if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end()) {
    throw UsageError("feature selection lists a column twice");
  }
  if (chosen.empty() || chosen.size() > kMaxBits) {
    throw UsageError("feature selection must keep between 1 and 64 columns");
  }
  return chosen;
}

struct Problem {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> columns;
};

Problem load_problem(const Json& config, const Paths& paths, bool need_test) {
  Dataset train = load_csv(or_default(paths.train, paths, "train.csv"), "train CSV");
  Dataset test;
  if (need_test) {
    test = load_csv(or_default(paths.test, paths, "test.csv"), "test CSV");
    if (test.names() != train.names()) throw DataError("train and test CSV columns differ");
  }
  auto columns = select_features(config, train);
  Problem p;
  p.train = train.take_columns(columns);
  if (need_test) p.test = test.take_columns(columns);
  p.columns = std::move(columns);
  return p;
}

Json features_json(const Problem& p) {
  return {{"columns", p.columns}, {"names", p.train.names()}};
}

std::vector<std::string> chosen_names(const Bitstring& subset, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (std::size_t l = 0; l < subset.size(); ++l) {
    if (subset.test(l)) out.push_back(names[l]);
  }
  return out;
}

std::unique_ptr<Backend> backend_from(const Json& config) {
  const std::string kind = config.at("backend").at("kind").get<std::string>();
  if (kind == "statevector" || kind == "sv") return std::make_unique<StatevectorBackend>();
  if (kind == "mps") return std::make_unique<MpsBackend>(mps_options(config));
  throw UsageError("backend.kind must be 'statevector' or 'mps', got '" + kind + "'");
}

std::size_t baseline_target(const Json& config, std::size_t n) {
  const auto k = count_at(config, "baseline", "target_k");
  if (k == 0) return std::max<std::size_t>(1, n / 2);
  if (k > n) throw UsageError("baseline.target_k exceeds the number of features");
  return k;
}

Bitstring parse_subset(const std::string& text, std::size_t n) {
  Bitstring b;
  try {
    b = Bitstring::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (b.size() != n) {
    throw UsageError("subset '" + text + "' has " + std::to_string(b.size()) + " bits, expected " +
                     std::to_string(n));
  }
  return b;
}

void do_split(const Json& config, const Dataset& data, const ArtifactWriter& w) {
  const Json& d = config.at("data");
  const double ratio = d.at("ratio").get<double>();
  const auto criterion = split_criterion(config);
  const SplitPair pair =
      split(data, ratio, master_seed(config), count_at(config, "data", "max_retries"), criterion);
  w.csv("train.csv", [&](std::ostream& os) { write_dataset_csv(pair.train, os); });
  w.csv("test.csv", [&](std::ostream& os) { write_dataset_csv(pair.test, os); });
  w.json("split.json", Json::parse(split_manifest_json(pair, criterion, ratio)));
  std::cerr << "split: " << pair.train.rows() << " train / " << pair.test.rows()
            << " test rows after " << pair.attempts << " attempt(s), worst |dr| "
            << pair.report.worst_difference << " (" << pair.report.worst_feature << ")\n";
}

}  // namespace

void cmd_ingest(const Json& config, const Paths& paths) {
  const std::string path = config.at("data").at("path").get<std::string>();
  const Dataset data = one_hot_encode(load_german(path));
  const ArtifactWriter w(paths.out, config, master_seed(config));
  w.csv("encoded.csv", [&](std::ostream& os) { write_dataset_csv(data, os); });
  const auto good = static_cast<std::size_t>(data.labels().sum());
  w.json("ingest.json", {{"source", path},
                         {"rows", data.rows()},
                         {"columns", data.cols()},
                         {"names", data.names()},
                         {"label_counts", {{"good", good}, {"bad", data.rows() - good}}}});
  std::cerr << "ingest: " << data.rows() << " rows, " << data.cols() << " encoded columns\n";
  do_split(config, data, w);
}

void cmd_split(const Json& config, const Paths& paths) {
  const Dataset data = load_csv(or_default(paths.encoded, paths, "encoded.csv"), "encoded CSV");
  do_split(config, data, ArtifactWriter(paths.out, config, master_seed(config)));
}

void cmd_train(const Json& config, const Paths& paths, const std::optional<fs::path>& resume) {
  const auto seeds = seed_list(config);
  if (resume && seeds.size() != 1) throw UsageError("--resume needs exactly one seed");
  std::optional<OptimizerState> resume_state;
  if (resume) {
    try {
      resume_state = state_from_json(read_file(*resume));
    } catch (const std::invalid_argument& e) {
      throw DataError("bad snapshot '" + resume->string() + "': " + e.what());
    }
  }

  const Problem p = load_problem(config, paths, false);
  const std::size_t n = p.train.cols();
  const Circuit circuit =
      build_real_amplitudes(n, count_at(config, "circuit", "depth"));
  const auto backend = backend_from(config);
  const auto snapshot_every = count_at(config, "optimizer", "snapshot_every");
  const ArtifactWriter root(paths.out, config, master_seed(config));
  root.json("features.json", features_json(p));

  for (const std::uint64_t seed : seeds) {
    const OptimizerConfig oc = optimizer_config(config, seed);
    const ArtifactWriter w = root.child("seed_" + std::to_string(seed), seed);
    // Fresh objective per seed: nothing is shared between runs of a sweep.
    const SubsetObjective objective(p.train, model_config(config));
    RunHooks hooks;
    hooks.on_step = [&](const OptimizerState& s) {
      if (snapshot_every > 0 && s.iteration % snapshot_every == 0) {
        w.json("snapshot.json", Json::parse(state_to_json(s)));
      }
    };
    TrainingResult result;
    try {
      result = run(oc, circuit, objective, *backend, hooks, resume_state);
    } catch (...) {
      std::cerr << "train: seed " << seed << " failed\n";
      throw;
    }
    const OptimizerState& s = result.state;

    w.csv("trace.csv", [&](std::ostream& os) { write_trace_csv(s.trace, os); });
    w.csv("samples.csv", [&](std::ostream& os) { result.final_samples.write_csv(os); });
    w.json("snapshot.json", Json::parse(state_to_json(s)));

    std::pair<std::uint64_t, std::size_t> mode{0, 0};
    double mean_score = 0.0;
    for (const auto& [word, count] : result.final_samples.counts()) {
      if (count > mode.second) mode = {word, count};
      mean_score += static_cast<double>(count) * objective(Bitstring(word, n));
    }
    mean_score /= static_cast<double>(result.final_samples.total_shots());
    const Bitstring best = top_k_sampled(result.final_samples, objective, 1).front();
    const Bitstring most = Bitstring(mode.first, n);
    const std::size_t accepted = static_cast<std::size_t>(std::count_if(
        s.trace.begin(), s.trace.end(), [](const TraceRow& r) { return r.accepted; }));

    w.json("result.json",
           {{"seed", seed},
            {"iterations", s.iteration},
            {"accepted_steps", accepted},
            {"theta", std::vector<double>(s.theta.data(), s.theta.data() + s.theta.size())},
            {"initial_loss", s.initial_loss},
            {"final_loss", s.current_loss},
            {"sigma0", s.sigma0},
            {"final_shots", result.final_samples.total_shots()},
            {"sampled_mean_score", mean_score},
            {"distinct_samples", result.final_samples.distinct()},
            {"most_frequent",
             {{"bitstring", most.str()},
              {"count", mode.second},
              {"train_score", objective(most)}}},
            {"best_sampled",
             {{"bitstring", best.str()},
              {"train_score", objective(best)},
              {"features", chosen_names(best, p.train.names())}}}});
    std::cerr << "train: seed " << seed << " loss " << s.initial_loss << " -> " << s.current_loss
              << ", best sampled " << best.str() << " (" << objective(best) << ")\n";
  }
}

void cmd_baseline(const Json& config, const Paths& paths, const std::string& method) {
  const Problem p = load_problem(config, paths, true);
  const std::size_t n = p.train.cols();
  const LogRegConfig model = model_config(config);
  const ArtifactWriter w(paths.out, config, master_seed(config));
  const auto& names = p.train.names();
  auto subset_json = [&](const Bitstring& b) {
    return Json{{"bitstring", b.str()},
                {"features", chosen_names(b, names)},
                {"train_score", train_score(b, p.train, model)},
                {"test_score", test_score(b, p.train, p.test, model)}};
  };

  if (method == "exhaustive") {
    const SubsetObjective objective(p.train, model);
    const auto cap = count_at(config, "baseline", "cap");
    if (n > cap) {
      throw UsageError("exhaustive search over " + std::to_string(n) +
                       " features exceeds baseline.cap = " + std::to_string(cap));
    }
    const RankedSubsets ranked = exhaustive(objective, cap);
    w.csv("ranked.csv", [&](std::ostream& os) { write_ranked_csv(ranked, os); });
    w.json("baseline_exhaustive.json",
           {{"n_features", n}, {"evaluated", ranked.entries.size()},
            {"best", subset_json(ranked.best().first)}});
    std::cerr << "baseline: exhaustive minimum " << ranked.best().second << " at "
              << ranked.best().first.str() << "\n";
  } else if (method == "rfe") {
    const std::size_t k = baseline_target(config, n);
    const EliminationTrace trace = rfe(p.train, k, model);
    w.csv("elimination.csv", [&](std::ostream& os) { write_elimination_csv(trace, names, os); });
    w.json("baseline_rfe.json", {{"target_k", k}, {"subset", subset_json(trace.final_subset)}});
    std::cerr << "baseline: rfe keeps " << trace.final_subset.str() << "\n";
  } else if (method == "rfecv") {
    const std::string which = config.at("baseline").at("scoring").get<std::string>();
    std::vector<Scoring> scorings;
    if (which == "both") {
      scorings = {Scoring::log_loss, Scoring::accuracy};
    } else {
      try {
        scorings = {parse_scoring(which)};
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    const auto folds = count_at(config, "baseline", "folds");
    Json summary = Json::object();
    std::vector<std::pair<std::string, RfecvResult>> rows;
    for (const Scoring s : scorings) {
      const std::string label = s == Scoring::log_loss ? "log_loss" : "accuracy";
      RfecvResult r = rfecv(p.train, s, folds, master_seed(config), model);
      summary[label] = {{"best_size", r.best_size},
                        {"mean_scores", r.mean_scores},
                        {"subset", subset_json(r.subset)}};
      std::cerr << "baseline: rfecv(" << label << ") keeps " << r.best_size << " features\n";
      rows.emplace_back(label, std::move(r));
    }
    w.csv("rfecv.csv", [&](std::ostream& os) {
      os << "scoring,size,mean_cv_score\n";
      os.precision(17);
      for (const auto& [label, r] : rows) {
        for (std::size_t i = 0; i < r.mean_scores.size(); ++i) {
          os << label << ',' << i + 1 << ',' << r.mean_scores[i] << '\n';
        }
      }
    });
    summary["folds"] = folds;
    w.json("baseline_rfecv.json", std::move(summary));
  } else {
    throw UsageError("baseline method must be exhaustive, rfe or rfecv, got '" + method + "'");
  }
}

void cmd_analyze(const Json& config, const Paths& paths, const std::string& what,
                 const AnalyzeInputs& inputs) {
  static const std::vector<std::string> kinds = {"cdf", "ci", "compare", "qubofit", "all"};
  if (std::find(kinds.begin(), kinds.end(), what) == kinds.end()) {
    throw UsageError("analyze expects one of cdf, ci, compare, qubofit, all; got '" + what + "'");
  }
  const bool all = what == "all";
  const bool needs_run = what != "qubofit";
  const std::uint64_t seed = master_seed(config);

  const Problem p = load_problem(config, paths, true);
  const std::size_t n = p.train.cols();
  const LogRegConfig model = model_config(config);
  const SubsetObjective train_obj(p.train, model);
  const TestScoreObjective test_obj(p.train, p.test, model);
  const ArtifactWriter w(paths.out, config, seed);
  Json summary = Json::object();

  SampleSet samples(n);
  Bitstring quantum;
  Bitstring classical;
  if (needs_run) {
    const fs::path dir = inputs.run ? *inputs.run : paths.out / ("seed_" + std::to_string(seed));
    if (!fs::is_directory(dir)) {
      throw DataError("result directory '" + dir.string() + "' not found (run `qfs train` first)");
    }
    std::istringstream is(read_file(dir / "samples.csv"));
    try {
      samples = SampleSet::read_csv(is);
    } catch (const std::exception& e) {
      throw DataError("bad samples.csv in '" + dir.string() + "': " + e.what());
    }
    if (samples.n_qubits() != n) {
      throw DataError("samples in '" + dir.string() + "' have " +
                      std::to_string(samples.n_qubits()) + " bits but " + std::to_string(n) +
                      " features are selected; use the config the run was trained with");
    }
    quantum = inputs.subset ? parse_subset(*inputs.subset, n)
                            : top_k_sampled(samples, train_obj, 1).front();
    classical = inputs.against ? parse_subset(*inputs.against, n)
                               : rfe(p.train, baseline_target(config, n), model).final_subset;
    summary["run"] = dir.filename().string();
    summary["quantum"] = {{"bitstring", quantum.str()},
                          {"train_score", train_obj(quantum)},
                          {"test_score", test_obj(quantum)}};
    summary["classical"] = {{"bitstring", classical.str()},
                            {"train_score", train_obj(classical)},
                            {"test_score", test_obj(classical)}};
  }

  if (all || what == "cdf") {
    const CdfCurve tr = cdf(samples, train_obj);
    const CdfCurve te = cdf(samples, test_obj);
    w.csv("cdf_train.csv", [&](std::ostream& os) { write_cdf_csv(tr, os); });
    w.csv("cdf_test.csv", [&](std::ostream& os) { write_cdf_csv(te, os); });
    Json c = {{"train_mass_at_classical", tr.mass_at_or_below(train_obj(classical))},
              {"test_mass_at_classical", te.mass_at_or_below(test_obj(classical))}};
    if (n <= count_at(config, "analysis", "uniform_cap")) {
      const CdfCurve utr = uniform_cdf(exhaustive(train_obj, kExhaustiveCap));
      const CdfCurve ute = uniform_cdf(exhaustive(test_obj, kExhaustiveCap));
      w.csv("cdf_train_uniform.csv", [&](std::ostream& os) { write_cdf_csv(utr, os); });
      w.csv("cdf_test_uniform.csv", [&](std::ostream& os) { write_cdf_csv(ute, os); });
      c["uniform_train_mass_at_classical"] = utr.mass_at_or_below(train_obj(classical));
      c["uniform_test_mass_at_classical"] = ute.mass_at_or_below(test_obj(classical));
    }
    summary["cdf"] = std::move(c);
  }

  if (all || what == "ci") {
    const BootstrapConfig bc = bootstrap_config(config);
    const BootstrapResult q = bootstrap_ci(quantum, p.train, p.test, bc, model);
    const BootstrapResult c = bootstrap_ci(classical, p.train, p.test, bc, model);
    w.csv("ci.csv", [&](std::ostream& os) {
      os.precision(17);
      os << "label,bitstring,split,lo,hi\n";
      for (const auto& [label, b, r] : {std::tuple{"quantum", quantum, q},
                                        std::tuple{"classical", classical, c}}) {
        os << label << ',' << b.str() << ",train," << r.train.lo << ',' << r.train.hi << '\n';
        os << label << ',' << b.str() << ",test," << r.test.lo << ',' << r.test.hi << '\n';
      }
    });
    auto interval = [](const Interval& i) { return Json{i.lo, i.hi}; };
    summary["ci"] = {{"level", bc.level},
                     {"resamples", bc.resamples},
                     {"quantum", {{"train", interval(q.train)}, {"test", interval(q.test)},
                                  {"redraws", q.redraws}}},
                     {"classical", {{"train", interval(c.train)}, {"test", interval(c.test)},
                                    {"redraws", c.redraws}}}};
  }

  if (all || what == "compare") {
    const PairedConfig pc = paired_config(config);
    const auto k = count_at(config, "analysis", "top_k");
    const WinFractions single = paired_compare(quantum, classical, p.train, p.test, pc, model);
    const WinFractions avg =
        top_k_average_compare(samples, train_obj, classical, p.train, p.test, k, pc, model);
    w.csv("compare.csv", [&](std::ostream& os) {
      os.precision(17);
      os << "comparison,train_win_fraction,test_win_fraction,compared\n";
      os << "best_vs_classical," << single.train << ',' << single.test << ','
         << single.compared << '\n';
      os << "top" << k << "_vs_classical," << avg.train << ',' << avg.test << ',' << avg.compared
         << '\n';
    });
    summary["compare"] = {{"trials", pc.trials},
                          {"best", {{"train", single.train}, {"test", single.test}}},
                          {"top_k", {{"k", k}, {"compared", avg.compared},
                                     {"train", avg.train}, {"test", avg.test}}}};
  }

  if (all || what == "qubofit") {
    if (n > kExhaustiveCap) {
      throw UsageError("qubofit needs n <= " + std::to_string(kExhaustiveCap) + ", have " +
                       std::to_string(n));
    }
    const QuboModel q = qubo_fit(train_obj, kExhaustiveCap);
    Json body = Json::parse(qubo_to_json(q));
    body["features"] = p.train.names();
    w.json("qubo.json", std::move(body));
    summary["qubo_mse"] = q.mse;
  }

  w.json("analysis.json", std::move(summary));
}

}  // namespace qfs::cli
