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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "qfs/baselines.hpp"
#include "qfs/dataset.hpp"
#include "qfs/mps.hpp"
#include "qfs/objective.hpp"
#include "qfs/qnspsa.hpp"

namespace {

using qfs::cli::Json;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

// A flag that, when given, overrides one config key.
struct Override {
  std::string key;
  std::function<Json()> value;
  CLI::Option* option = nullptr;
};

template <typename T>
CLI::Option* add_override(CLI::App& app, std::vector<Override>& overrides, std::vector<std::unique_ptr<T>>& store,
                  const std::string& flag, const std::string& key, const std::string& help) {
  store.push_back(std::make_unique<T>());
  T* slot = store.back().get();
  CLI::Option* opt = app.add_option(flag, *slot, help);
  overrides.push_back({key, [slot] { return Json(*slot); }, opt});
  return opt;
}

int run(int argc, char** argv) {
  CLI::App app{"qfs: variational black-box feature selection"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", QFS_VERSION);

  std::optional<std::string> config_path;
  std::vector<std::string> sets;
  qfs::cli::Paths paths;
  std::optional<std::filesystem::path> encoded, train_csv, test_csv;
  app.add_option("-c,--config", config_path, "JSON config file");
  app.add_option("-s,--set", sets, "Override a config key, e.g. --set optimizer.eta=0.05")
      ->take_all();
  app.add_option("-o,--out", paths.out, "Output directory")->capture_default_str();
  app.add_option("--encoded", encoded, "Encoded dataset CSV (default <out>/encoded.csv)");
  app.add_option("--train", train_csv, "Train CSV (default <out>/train.csv)");
  app.add_option("--test", test_csv, "Test CSV (default <out>/test.csv)");

  std::vector<Override> overrides;
  std::vector<std::unique_ptr<std::uint64_t>> u64s;
  std::vector<std::unique_ptr<std::size_t>> sizes;
  std::vector<std::unique_ptr<std::string>> strings;
  std::vector<std::unique_ptr<double>> doubles;
  add_override(app, overrides, u64s, "--seed", "seed", "Master seed");
  add_override(app, overrides, strings, "--data", "data.path", "Raw german.data file");
  add_override(app, overrides, strings, "--features", "features.mode",
       "full | reduced | first_k | names | reference");
  add_override(app, overrides, sizes, "-k,--k", "features.k", "Feature count for reduced / first_k");

  auto* ingest = app.add_subcommand("ingest", "Encode the raw data and split it");
  add_override(*ingest, overrides, doubles, "--ratio", "data.ratio", "Train fraction");
  auto* split = app.add_subcommand("split", "Re-split an encoded dataset");
  add_override(*split, overrides, doubles, "--ratio", "data.ratio", "Train fraction");

  auto* train = app.add_subcommand("train", "Run the optimizer for one or more seeds");
  std::vector<std::uint64_t> seeds;
  auto* seeds_opt = train->add_option("--seeds", seeds, "Seed sweep, one result directory each");
  std::optional<std::filesystem::path> resume;
  train->add_option("--resume", resume, "Continue from a snapshot.json");
  add_override(*train, overrides, sizes, "--iterations", "optimizer.iterations", "Optimizer iterations");
  add_override(*train, overrides, sizes, "--shots", "optimizer.shots", "Shots per estimate");
  add_override(*train, overrides, sizes, "--depth", "circuit.depth", "Ansatz depth");
  add_override(*train, overrides, strings, "--backend", "backend.kind", "statevector | mps");
  add_override(*train, overrides, sizes, "--snapshot-every", "optimizer.snapshot_every",
       "Snapshot period in iterations (0 = only at the end)");

  auto* baseline = app.add_subcommand("baseline", "Classical baselines");
  std::string method;
  baseline->add_option("method", method, "exhaustive | rfe | rfecv")
      ->required()
      ->check(CLI::IsMember({"exhaustive", "rfe", "rfecv"}));
  add_override(*baseline, overrides, sizes, "--target-k", "baseline.target_k",
       "RFE target size (0 = half the features)");
  add_override(*baseline, overrides, strings, "--scoring", "baseline.scoring",
       "RFECV scoring: log_loss | accuracy | both");
  add_override(*baseline, overrides, sizes, "--folds", "baseline.folds", "RFECV folds");

  auto* analyze = app.add_subcommand("analyze", "CDF, intervals, comparisons and QUBO fit");
  std::string what = "all";
  analyze->add_option("what", what, "cdf | ci | compare | qubofit | all")
      ->check(CLI::IsMember({"cdf", "ci", "compare", "qubofit", "all"}));
  qfs::cli::AnalyzeInputs inputs;
  analyze->add_option("--run", inputs.run, "Result directory of a train run");
  analyze->add_option("--subset", inputs.subset, "Quantum subset (default: best sampled)");
  analyze->add_option("--against", inputs.against, "Classical subset (default: RFE)");
  add_override(*analyze, overrides, sizes, "--top-k", "analysis.top_k", "Subsets averaged in compare");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  paths.encoded = encoded;
  paths.train = train_csv;
  paths.test = test_csv;

  Json config = qfs::cli::load_config(config_path, sets);
  for (const Override& o : overrides) {
    if (o.option->count() > 0) qfs::cli::set_path(config, o.key, o.value());
  }
  if (seeds_opt->count() > 0) qfs::cli::set_path(config, "train.seeds", seeds);
  qfs::cli::validate_config(config);

  if (ingest->parsed()) {
    qfs::cli::cmd_ingest(config, paths);
  } else if (split->parsed()) {
    qfs::cli::cmd_split(config, paths);
  } else if (train->parsed()) {
    qfs::cli::cmd_train(config, paths, resume);
  } else if (baseline->parsed()) {
    qfs::cli::cmd_baseline(config, paths, method);
  } else if (analyze->parsed()) {
    qfs::cli::cmd_analyze(config, paths, what, inputs);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qfs::cli::UsageError& e) {
    std::cerr << "qfs: usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qfs: invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "qfs: problem too large: " << e.what() << "\n";
    return kUsage;
  } catch (const qfs::DataError& e) {
    std::cerr << "qfs: data error: " << e.what() << "\n";
    return kData;
  } catch (const qfs::FoldError& e) {
    std::cerr << "qfs: data error: " << e.what() << "\n";
    return kData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "qfs: data error: " << e.what() << "\n";
    return kData;
  } catch (const Json::exception& e) {
    std::cerr << "qfs: config error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    // NumericError, MpsError, ObjectiveError and anything unexpected.
    std::cerr << "qfs: numeric failure: " << e.what() << "\n";
    return kNumeric;
  }
}
