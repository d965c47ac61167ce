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

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace qfs {

inline constexpr std::size_t kMaxBits = 64;

/// A measured computational basis state / feature subset of width n <= 64.
///
/// Bit l of `word()` is qubit l, which is feature l. The textual form lists
/// qubit 0 first, so "100" on three qubits selects only feature 0.
class Bitstring {
 public:
  constexpr Bitstring() = default;
  Bitstring(std::uint64_t word, std::size_t width);

  static Bitstring zeros(std::size_t width) { return Bitstring(0, width); }
  static Bitstring ones(std::size_t width);
  static Bitstring parse(std::string_view text);

  constexpr std::uint64_t word() const { return word_; }
  constexpr std::size_t size() const { return width_; }

  bool test(std::size_t bit) const { return ((word_ >> bit) & 1u) != 0; }
  Bitstring with(std::size_t bit, bool value) const;
  std::size_t count() const { return static_cast<std::size_t>(std::popcount(word_)); }

  std::string str() const;

  friend constexpr auto operator<=>(const Bitstring&, const Bitstring&) = default;

 private:
  std::uint64_t word_ = 0;
  std::size_t width_ = 0;
};

}  // namespace qfs

template <>
struct std::hash<qfs::Bitstring> {
  std::size_t operator()(const qfs::Bitstring& b) const noexcept {
    return std::hash<std::uint64_t>{}(b.word() * 0x9E3779B97F4A7C15ull ^ b.size());
  }
};
