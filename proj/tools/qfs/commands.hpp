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

#include <filesystem>
#include <optional>
#include <string>

#include "config.hpp"

namespace qfs::cli {

struct Paths {
  std::filesystem::path out = "out";
  std::optional<std::filesystem::path> encoded;  // default <out>/encoded.csv
  std::optional<std::filesystem::path> train;    // default <out>/train.csv
  std::optional<std::filesystem::path> test;     // default <out>/test.csv
};

void cmd_ingest(const Json& config, const Paths& paths);
void cmd_split(const Json& config, const Paths& paths);
void cmd_train(const Json& config, const Paths& paths,
               const std::optional<std::filesystem::path>& resume);
void cmd_baseline(const Json& config, const Paths& paths, const std::string& method);

struct AnalyzeInputs {
  std::optional<std::filesystem::path> run;  // default <out>/seed_<seed>
  std::optional<std::string> subset;         // default: best sampled subset
  std::optional<std::string> against;        // default: RFE at target_k
};

void cmd_analyze(const Json& config, const Paths& paths, const std::string& what,
                 const AnalyzeInputs& inputs);

}  // namespace qfs::cli
