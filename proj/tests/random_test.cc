// Copyright 2026 The rlasso Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rlasso/random.h"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

namespace rlasso {
namespace {

// Reference values computed with an independent Python implementation of
// splitmix64 and xoshiro256**.
TEST(SplitMixTest, KnownOutputs) {
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(derive_seed(42, 0), 9129838320742759465ULL);
}

TEST(RngTest, KnownXoshiroStream) {
  Rng rng(12345);
  EXPECT_EQ(rng(), 13720838825685603483ULL);
  EXPECT_EQ(rng(), 2398916695208396998ULL);
  EXPECT_EQ(rng(), 17770384849984869256ULL);
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(7);
  Rng b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.normal(), b.normal());
}

TEST(RngTest, DerivedSeedsDiffer) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_seed(1, i));
  EXPECT_EQ(seeds.size(), 1000u);
}

TEST(RngTest, UniformInUnitInterval) {
  Rng rng(3);
  double sum = 0.0;
  const int count = 100000;
  for (int i = 0; i < count; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // Mean 1/2 with standard error 1/sqrt(12 count) ~ 9e-4.
  EXPECT_NEAR(sum / count, 0.5, 5e-3);
}

TEST(RngTest, BelowCoversRangeUniformly) {
  Rng rng(4);
  int counts[7] = {0};
  const int count = 70000;
  for (int i = 0; i < count; ++i) {
    const auto k = rng.below(7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  for (int c : counts) EXPECT_NEAR(c, count / 7, 500);
}

TEST(RngTest, NormalMoments) {
  Rng rng(5);
  const int count = 200000;
  double m1 = 0.0, m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < count; ++i) {
    const double z = rng.normal();
    m1 += z;
    m2 += z * z;
    m4 += z * z * z * z;
  }
  EXPECT_NEAR(m1 / count, 0.0, 0.01);
  EXPECT_NEAR(m2 / count, 1.0, 0.01);
  EXPECT_NEAR(m4 / count, 3.0, 0.06);
}

TEST(RngTest, RademacherIsBalanced) {
  Rng rng(6);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double r = rng.rademacher();
    ASSERT_TRUE(r == 1.0 || r == -1.0);
    sum += r;
  }
  EXPECT_LT(std::abs(sum), 1500.0);
}

TEST(RngTest, MatrixIsFilledRowMajor) {
  Rng a(8);
  Rng b(8);
  const Matrix m = a.normal_matrix(3, 2);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 2; ++j) EXPECT_EQ(m(i, j), b.normal());
  }
}

}  // namespace
}  // namespace rlasso
