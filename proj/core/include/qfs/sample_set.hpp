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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "qfs/bitstring.hpp"

namespace qfs {

/// Multiset of measured n-bit strings. Iteration is in ascending word order,
/// so anything derived from a SampleSet is deterministic.
class SampleSet {
 public:
  explicit SampleSet(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  void add(std::uint64_t word, std::size_t count = 1);
  void add(const Bitstring& b, std::size_t count = 1);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t total_shots() const { return total_; }
  std::size_t distinct() const { return counts_.size(); }
  std::size_t count(std::uint64_t word) const;
  double frequency(std::uint64_t word) const;

  const std::map<std::uint64_t, std::size_t>& counts() const { return counts_; }
  std::vector<Bitstring> support() const;

  void write_csv(std::ostream& os) const;
  static SampleSet read_csv(std::istream& is);

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

 private:
  std::size_t n_qubits_;
  std::size_t total_ = 0;
  std::map<std::uint64_t, std::size_t> counts_;
};

}  // namespace qfs
