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

#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <type_traits>

namespace qfs::cli {
namespace {

EstimationMode parse_mode(const std::string& s) {
  if (s == "sampled") return EstimationMode::sampled;
  if (s == "exact") return EstimationMode::exact;
  throw UsageError("estimation mode must be 'sampled' or 'exact', got '" + s + "'");
}

template <typename T>
T get(const Json& j, const char* section, const char* key) {
  if constexpr (std::is_same_v<T, std::size_t>) {
    return count_at(j, section, key);
  } else {
    try {
      return j.at(section).at(key).get<T>();
    } catch (const Json::exception& e) {
      throw UsageError(std::string("config ") + section + "." + key + ": " + e.what());
    }
  }
}

void merge_checked(Json& base, const Json& patch, const std::string& prefix) {
  if (!patch.is_object()) throw UsageError("config " + prefix + " must be an object");
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!base.contains(it.key())) throw UsageError("unknown config key '" + path + "'");
    Json& slot = base[it.key()];
    if (slot.is_object()) {
      merge_checked(slot, it.value(), path);
    } else {
      slot = it.value();
    }
  }
}

}  // namespace

std::uint64_t unsigned_value(const Json& v, const std::string& label) {
  // nlohmann would turn -3 or 2.5 into a size_t without complaint.
  if (!v.is_number_unsigned()) {
    throw UsageError("config " + label + ": expected a non-negative integer, got " + v.dump());
  }
  return v.get<std::uint64_t>();
}

std::size_t count_at(const Json& config, const char* section, const char* key) {
  const std::string label = std::string(section) + "." + key;
  if (!config.contains(section) || !config.at(section).contains(key)) {
    throw UsageError("config " + label + " is missing");
  }
  return static_cast<std::size_t>(unsigned_value(config.at(section).at(key), label));
}

Json default_config() {
  return Json::parse(R"({
    "seed": 0,
    "data": {
      "path": ")" QFS_DEFAULT_DATA R"(",
      "ratio": 0.5,
      "max_retries": 100000,
      "tolerance": 0.10,
      "difference": "absolute",
      "guard": 0.05
    },
    "features": { "mode": "reduced", "k": 20, "names": [] },
    "model": { "C": 1.0, "tolerance": 1e-6, "max_iterations": 1000 },
    "circuit": { "depth": 1 },
    "backend": { "kind": "mps", "chi_cap": 64 },
    "optimizer": {
      "iterations": 300,
      "shots": 1024,
      "epsilon": 0.01, "epsilon_offset": 0.0, "epsilon_exponent": 0.0,
      "eta": 0.01, "eta_offset": 0.0, "eta_exponent": 0.0,
      "resamples": 1,
      "beta": 0.01,
      "blocking": true,
      "blocking_tolerance": 2.0,
      "sigma_repeats": 25,
      "final_shots": 10000,
      "loss_mode": "sampled",
      "fidelity_mode": "sampled",
      "record_timing": false,
      "snapshot_every": 50
    },
    "train": { "seeds": [] },
    "baseline": { "target_k": 0, "scoring": "both", "folds": 5, "cap": 22 },
    "analysis": {
      "bootstrap": 50, "fraction": 0.7, "level": 0.95,
      "trials": 1000, "top_k": 10, "uniform_cap": 16
    }
  })");
}

void set_path(Json& config, const std::string& dotted, const Json& value) {
  Json* node = &config;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot - start);
    if (!node->is_object() || !node->contains(key)) {
      throw UsageError("unknown config key '" + dotted + "'");
    }
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (node->is_object()) throw UsageError("config key '" + dotted + "' is a section");
  *node = value;
}

Json load_config(const std::optional<std::string>& path, const std::vector<std::string>& sets) {
  Json config = default_config();
  if (path) {
    std::ifstream in(*path);
    if (!in) throw UsageError("cannot open config file " + *path);
    Json file;
    try {
      file = Json::parse(in);
    } catch (const Json::exception& e) {
      throw UsageError("config file " + *path + ": " + e.what());
    }
    merge_checked(config, file, "");
  }
  for (const std::string& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects KEY=VALUE, got '" + s + "'");
    const std::string text = s.substr(eq + 1);
    Json value;
    try {
      value = Json::parse(text);
    } catch (const Json::exception&) {
      value = text;
    }
    set_path(config, s.substr(0, eq), value);
  }
  return config;
}

std::string config_hash(const Json& config) {
  const std::string text = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

OptimizerConfig optimizer_config(const Json& config, std::uint64_t seed) {
  OptimizerConfig c;
  c.iterations = get<std::size_t>(config, "optimizer", "iterations");
  c.shots = get<std::size_t>(config, "optimizer", "shots");
  c.perturbation = {get<double>(config, "optimizer", "epsilon"),
                    get<double>(config, "optimizer", "epsilon_offset"),
                    get<double>(config, "optimizer", "epsilon_exponent")};
  c.learning_rate = {get<double>(config, "optimizer", "eta"),
                     get<double>(config, "optimizer", "eta_offset"),
                     get<double>(config, "optimizer", "eta_exponent")};
  c.resamples = get<std::size_t>(config, "optimizer", "resamples");
  c.regularization = get<double>(config, "optimizer", "beta");
  c.blocking = get<bool>(config, "optimizer", "blocking");
  c.blocking_tolerance = get<double>(config, "optimizer", "blocking_tolerance");
  c.sigma_repeats = get<std::size_t>(config, "optimizer", "sigma_repeats");
  c.final_shots = get<std::size_t>(config, "optimizer", "final_shots");
  c.loss_mode = parse_mode(get<std::string>(config, "optimizer", "loss_mode"));
  c.fidelity_mode = parse_mode(get<std::string>(config, "optimizer", "fidelity_mode"));
  c.record_timing = get<bool>(config, "optimizer", "record_timing");
  c.seed = seed;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("optimizer config: ") + e.what());
  }
  return c;
}

LogRegConfig model_config(const Json& config) {
  LogRegConfig m;
  m.C = get<double>(config, "model", "C");
  m.tolerance = get<double>(config, "model", "tolerance");
  m.max_iterations = get<std::size_t>(config, "model", "max_iterations");
  if (!(m.C > 0)) throw UsageError("model.C must be positive");
  return m;
}

SplitCriterion split_criterion(const Json& config) {
  SplitCriterion c;
  c.tolerance = get<double>(config, "data", "tolerance");
  c.guard = get<double>(config, "data", "guard");
  const std::string mode = get<std::string>(config, "data", "difference");
  if (mode == "absolute") {
    c.mode = DifferenceMode::absolute;
  } else if (mode == "relative") {
    c.mode = DifferenceMode::relative;
  } else {
    throw UsageError("data.difference must be 'absolute' or 'relative'");
  }
  return c;
}

MpsOptions mps_options(const Json& config) {
  MpsOptions o;
  o.chi_cap = get<std::size_t>(config, "backend", "chi_cap");
  return o;
}

BootstrapConfig bootstrap_config(const Json& config) {
  BootstrapConfig b;
  b.resamples = get<std::size_t>(config, "analysis", "bootstrap");
  b.fraction = get<double>(config, "analysis", "fraction");
  b.level = get<double>(config, "analysis", "level");
  b.seed = unsigned_value(config.at("seed"), "seed");
  return b;
}

PairedConfig paired_config(const Json& config) {
  PairedConfig p;
  p.trials = get<std::size_t>(config, "analysis", "trials");
  p.fraction = get<double>(config, "analysis", "fraction");
  p.seed = unsigned_value(config.at("seed"), "seed");
  return p;
}

void validate_config(const Json& config) {
  auto one_of = [&](const char* section, const char* key, std::initializer_list<const char*> ok) {
    const std::string v = get<std::string>(config, section, key);
    for (const char* o : ok) {
      if (v == o) return;
    }
    std::string list;
    for (const char* o : ok) list += std::string(list.empty() ? "" : ", ") + o;
    throw UsageError(std::string("config ") + section + "." + key + " must be one of " + list +
                     "; got '" + v + "'");
  };
  unsigned_value(config.at("seed"), "seed");
  get<std::string>(config, "data", "path");
  split_criterion(config);
  count_at(config, "data", "max_retries");
  const double ratio = get<double>(config, "data", "ratio");
  if (!(ratio > 0.0 && ratio < 1.0)) throw UsageError("config data.ratio must lie in (0, 1)");
  one_of("features", "mode", {"full", "reduced", "first_k", "names", "reference"});
  count_at(config, "features", "k");
  get<std::vector<std::string>>(config, "features", "names");
  model_config(config);
  count_at(config, "circuit", "depth");
  one_of("backend", "kind", {"statevector", "sv", "mps"});
  mps_options(config);
  optimizer_config(config, 0);
  count_at(config, "optimizer", "snapshot_every");
  seed_list(config);
  count_at(config, "baseline", "target_k");
  count_at(config, "baseline", "cap");
  if (count_at(config, "baseline", "folds") < 2) throw UsageError("config baseline.folds must be >= 2");
  one_of("baseline", "scoring", {"both", "log_loss", "log", "accuracy", "acc"});
  const BootstrapConfig b = bootstrap_config(config);
  if (b.resamples < 2) throw UsageError("config analysis.bootstrap must be >= 2");
  if (!(b.level > 0.0 && b.level < 1.0)) throw UsageError("config analysis.level must lie in (0, 1)");
  if (!(b.fraction > 0.0 && b.fraction <= 1.0)) {
    throw UsageError("config analysis.fraction must lie in (0, 1]");
  }
  if (paired_config(config).trials < 1) throw UsageError("config analysis.trials must be >= 1");
  if (count_at(config, "analysis", "top_k") < 1) throw UsageError("config analysis.top_k must be >= 1");
  count_at(config, "analysis", "uniform_cap");
}

std::vector<std::uint64_t> seed_list(const Json& config) {
  const Json& list = config.at("train").at("seeds");
  if (!list.is_array()) throw UsageError("config train.seeds must be an array");
  std::vector<std::uint64_t> seeds;
  for (const Json& s : list) seeds.push_back(unsigned_value(s, "train.seeds"));
  if (seeds.empty()) seeds.push_back(unsigned_value(config.at("seed"), "seed"));
  return seeds;
}

}  // namespace qfs::cli
