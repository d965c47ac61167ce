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

#include "qfs/bitstring.hpp"

#include <stdexcept>

namespace qfs {

namespace {

std::uint64_t mask_for(std::size_t width) {
  return width == kMaxBits ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

}  // namespace

Bitstring::Bitstring(std::uint64_t word, std::size_t width) : word_(word), width_(width) {
  if (width > kMaxBits) {
    throw std::invalid_argument("bitstring width " + std::to_string(width) + " exceeds 64");
  }
  if ((word & ~mask_for(width)) != 0) {
    throw std::invalid_argument("bitstring word has bits set beyond width " +
                                std::to_string(width));
  }
}

Bitstring Bitstring::ones(std::size_t width) { return Bitstring(mask_for(width), width); }

Bitstring Bitstring::parse(std::string_view text) {
  if (text.size() > kMaxBits) {
    throw std::invalid_argument("bitstring longer than 64 characters");
  }
  std::uint64_t word = 0;
  for (std::size_t l = 0; l < text.size(); ++l) {
    if (text[l] == '1') {
      word |= std::uint64_t{1} << l;
    } else if (text[l] != '0') {
      throw std::invalid_argument("invalid bitstring character in '" + std::string(text) + "'");
    }
  }
  return Bitstring(word, text.size());
}

Bitstring Bitstring::with(std::size_t bit, bool value) const {
  if (bit >= width_) throw std::out_of_range("bit index out of range");
  const std::uint64_t m = std::uint64_t{1} << bit;
  return Bitstring(value ? (word_ | m) : (word_ & ~m), width_);
}

std::string Bitstring::str() const {
  std::string out(width_, '0');
  for (std::size_t l = 0; l < width_; ++l) {
    if (test(l)) out[l] = '1';
  }
  return out;
}

}  // namespace qfs
