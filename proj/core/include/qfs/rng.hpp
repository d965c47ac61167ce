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
#include <initializer_list>
#include <random>

namespace qfs {

/// Counter-based seed derivation.
///
/// A sub-stream seed is splitmix64 applied to the master seed folded with
/// each coordinate in turn: derive_seed(7, {3, 1}) always names the same
/// stream, on every platform. Components are arbitrary integers chosen by
/// the caller (iteration index, resample index, stream tag).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords);

std::uint64_t splitmix64(std::uint64_t x);

/// Portable random stream. Only the raw mt19937_64 word sequence is used, so
/// draws are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  /// +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }

  /// Standard normal via Box-Muller (one value per call).
  double normal();

  /// A child stream with a seed derived from this stream's next word.
  Rng fork() { return Rng(splitmix64(engine_())); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qfs
