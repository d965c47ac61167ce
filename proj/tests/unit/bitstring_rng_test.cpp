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

#include <gtest/gtest.h>

#include <set>

#include "qfs/bitstring.hpp"
#include "qfs/rng.hpp"

namespace qfs {
namespace {

TEST(Bitstring, TextListsQubitZeroFirst) {
  const Bitstring b = Bitstring::parse("100");
  EXPECT_EQ(b.word(), 1u);
  EXPECT_EQ(b.size(), 3u);
  EXPECT_TRUE(b.test(0));
  EXPECT_EQ(b.str(), "100");
  EXPECT_EQ(Bitstring(6, 3).str(), "011");
}

TEST(Bitstring, RoundTripsAllFourBitWords) {
  for (std::uint64_t w = 0; w < 16; ++w) {
    const Bitstring b(w, 4);
    EXPECT_EQ(Bitstring::parse(b.str()), b);
  }
}

TEST(Bitstring, RejectsBadInput) {
  EXPECT_THROW(Bitstring::parse("10x"), std::invalid_argument);
  EXPECT_THROW(Bitstring(8, 3), std::invalid_argument);
  EXPECT_THROW(Bitstring(0, 65), std::invalid_argument);
}

TEST(Bitstring, WithAndCount) {
  Bitstring b = Bitstring::zeros(5).with(1, true).with(4, true);
  EXPECT_EQ(b.count(), 2u);
  EXPECT_EQ(b.str(), "01001");
  EXPECT_EQ(b.with(1, false).count(), 1u);
  EXPECT_EQ(Bitstring::ones(64).count(), 64u);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Rng, UniformInUnitInterval) {
  Rng r(1);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = r.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / 20000, 0.5, 0.01);
}

TEST(Rng, BelowStaysInRange) {
  Rng r(3);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) ++hist[r.below(7)];
  for (int h : hist) EXPECT_NEAR(h, 1000, 150);
}

TEST(Rng, DerivedSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 20; ++a) {
    for (std::uint64_t b = 0; b < 20; ++b) seen.insert(derive_seed(7, {a, b}));
  }
  EXPECT_EQ(seen.size(), 400u);
  EXPECT_NE(derive_seed(7, {1}), derive_seed(8, {1}));
  EXPECT_EQ(derive_seed(7, {1, 2}), derive_seed(7, {1, 2}));
}

}  // namespace
}  // namespace qfs
