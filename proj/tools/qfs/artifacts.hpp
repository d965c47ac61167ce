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
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include "config.hpp"

namespace qfs::cli {

inline constexpr int kArtifactVersion = 1;

// Every file written through here carries the same (hash, seed, version)
// triple plus the effective config. CSVs get it as '#' lines, JSON as "meta".
class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, const Json& config, std::uint64_t seed);

  const std::filesystem::path& dir() const { return dir_; }
  ArtifactWriter child(const std::string& subdir, std::uint64_t seed) const;

  void csv(const std::string& name, const std::function<void(std::ostream&)>& body) const;
  void json(const std::string& name, Json body) const;

 private:
  void commit(const std::string& name, const std::string& content) const;

  std::filesystem::path dir_;
  Json config_;
  std::string hash_;
  std::uint64_t seed_;
};

std::string read_file(const std::filesystem::path& path);

}  // namespace qfs::cli
