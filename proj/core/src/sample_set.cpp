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

#include "qfs/sample_set.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qfs {

void SampleSet::add(std::uint64_t word, std::size_t count) {
  if (count == 0) return;
  counts_[word] += count;
  total_ += count;
}

void SampleSet::add(const Bitstring& b, std::size_t count) {
  if (b.size() != n_qubits_) throw std::invalid_argument("bitstring width mismatch");
  add(b.word(), count);
}

std::size_t SampleSet::count(std::uint64_t word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

double SampleSet::frequency(std::uint64_t word) const {
  return total_ == 0 ? 0.0 : static_cast<double>(count(word)) / static_cast<double>(total_);
}

std::vector<Bitstring> SampleSet::support() const {
  std::vector<Bitstring> out;
  out.reserve(counts_.size());
  for (const auto& [word, c] : counts_) out.emplace_back(word, n_qubits_);
  return out;
}

void SampleSet::write_csv(std::ostream& os) const {
  os << "bitstring,count\n";
  for (const auto& [word, c] : counts_) {
    os << Bitstring(word, n_qubits_).str() << ',' << c << '\n';
  }
}

SampleSet SampleSet::read_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<SampleSet> out;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("bitstring", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("sample CSV line " + std::to_string(line_no) + ": missing comma");
    }
    const Bitstring b = Bitstring::parse(line.substr(0, comma));
    const std::size_t c = std::stoull(line.substr(comma + 1));
    if (!out) out.emplace(b.size());
    out->add(b, c);
  }
  if (!out) throw std::runtime_error("sample CSV contains no rows");
  return *out;
}

}  // namespace qfs
