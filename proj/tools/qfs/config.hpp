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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qfs/analysis.hpp"
#include "qfs/backend.hpp"
#include "qfs/dataset.hpp"
#include "qfs/logreg.hpp"
#include "qfs/qnspsa.hpp"

namespace qfs::cli {

using Json = nlohmann::json;

// Maps onto exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json default_config();

std::uint64_t unsigned_value(const Json& v, const std::string& label);
std::size_t count_at(const Json& config, const char* section, const char* key);

/// Defaults, then the file, then each KEY=VALUE override. Keys must exist in
/// the defaults; VALUE is read as JSON and falls back to a plain string.
Json load_config(const std::optional<std::string>& path, const std::vector<std::string>& sets);

/// Throws UsageError on the first bad value, before any work starts.
void validate_config(const Json& config);

void set_path(Json& config, const std::string& dotted, const Json& value);

/// FNV-1a over the canonical (key-sorted, compact) dump.
std::string config_hash(const Json& config);

OptimizerConfig optimizer_config(const Json& config, std::uint64_t seed);
LogRegConfig model_config(const Json& config);
SplitCriterion split_criterion(const Json& config);
MpsOptions mps_options(const Json& config);
BootstrapConfig bootstrap_config(const Json& config);
PairedConfig paired_config(const Json& config);

std::vector<std::uint64_t> seed_list(const Json& config);

}  // namespace qfs::cli
