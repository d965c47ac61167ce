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

#include "artifacts.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "qfs/dataset.hpp"

namespace qfs::cli {

ArtifactWriter::ArtifactWriter(std::filesystem::path dir, const Json& config, std::uint64_t seed)
    : dir_(std::move(dir)), config_(config), hash_(config_hash(config)), seed_(seed) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw DataError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

ArtifactWriter ArtifactWriter::child(const std::string& subdir, std::uint64_t seed) const {
  return ArtifactWriter(dir_ / subdir, config_, seed);
}

void ArtifactWriter::csv(const std::string& name,
                         const std::function<void(std::ostream&)>& body) const {
  std::ostringstream os;
  os << "# qfs artifact v" << kArtifactVersion << " config_hash=" << hash_ << " seed=" << seed_
     << "\n# config " << config_.dump() << "\n";
  body(os);
  commit(name, os.str());
}

void ArtifactWriter::json(const std::string& name, Json body) const {
  Json meta = {{"artifact_version", kArtifactVersion},
               {"config_hash", hash_},
               {"seed", seed_},
               {"config", config_}};
  body["meta"] = std::move(meta);
  commit(name, body.dump(2) + "\n");
}

void ArtifactWriter::commit(const std::string& name, const std::string& content) const {
  // Write then rename, so an interrupted run never leaves a half-written file.
  const auto target = dir_ / name;
  const auto tmp = dir_ / (name + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw DataError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw DataError("cannot move " + tmp.string() + " to " + target.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace qfs::cli
