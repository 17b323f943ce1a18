// Copyright 2026 The pipemap Authors
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

#include "pipemap/gen.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pipemap/error.h"
#include "pipemap/rng.h"
#include "test_util.h"

namespace pipemap {
namespace {

bool IsInteger(double v) { return v == std::floor(v); }

TEST(RngTest, KnownSequenceAndRanges) {
  Xorshift64Star a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = a.Next();
    EXPECT_EQ(x, b.Next());
    EXPECT_NE(x, c.Next());
  }
  Xorshift64Star r(7);
  for (int i = 0; i < 10000; ++i) {
    const std::int64_t v = r.UniformInt(3, 5);
    EXPECT_GE(v, 3);
    EXPECT_LE(v, 5);
    const double d = r.UniformReal(0.01, 10.0);
    EXPECT_GE(d, 0.01);
    EXPECT_LT(d, 10.0);
  }
}

TEST(RngTest, ZeroSeedIsUsable) {
  Xorshift64Star r(0);
  EXPECT_NE(r.Next(), 0u);
}

TEST(GenerateTest, E1HomogeneousCommunication) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = Generate({Family::kE1, 10, 10, seed});
    EXPECT_EQ(inst.platform.bandwidth, 10.0);
    ASSERT_EQ(inst.app.delta.size(), 11u);
    for (double d : inst.app.delta) EXPECT_EQ(d, 10.0);
    for (double w : inst.app.work) {
      EXPECT_TRUE(IsInteger(w));
      EXPECT_GE(w, 1.0);
      EXPECT_LE(w, 20.0);
    }
  }
}

TEST(GenerateTest, FamilyRanges) {
  struct Range {
    Family f;
    double wlo, whi, dlo, dhi;
    bool integer_work;
  };
  const Range ranges[] = {{Family::kE2, 1, 20, 1, 100, true},
                          {Family::kE3, 10, 1000, 1, 20, true},
                          {Family::kE4, 0.01, 10, 1, 20, false}};
  for (const Range& r : ranges) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Instance inst = Generate({r.f, 40, 100, seed});
      EXPECT_EQ(inst.app.stages(), 40);
      EXPECT_EQ(inst.platform.processors(), 100);
      for (double w : inst.app.work) {
        EXPECT_GE(w, r.wlo);
        if (r.integer_work) {
          EXPECT_LE(w, r.whi);
          EXPECT_TRUE(IsInteger(w));
        } else {
          EXPECT_LT(w, r.whi);
        }
      }
      for (double d : inst.app.delta) {
        EXPECT_TRUE(IsInteger(d));
        EXPECT_GE(d, r.dlo);
        EXPECT_LE(d, r.dhi);
      }
      for (double s : inst.platform.speeds) {
        EXPECT_TRUE(IsInteger(s));
        EXPECT_GE(s, 1.0);
        EXPECT_LE(s, 20.0);
      }
    }
  }
}

TEST(GenerateTest, Deterministic) {
  for (Family f : {Family::kE1, Family::kE2, Family::kE3, Family::kE4}) {
    const Instance a = Generate({f, 20, 10, 99});
    const Instance b = Generate({f, 20, 10, 99});
    EXPECT_EQ(a.app.work, b.app.work);
    EXPECT_EQ(a.app.delta, b.app.delta);
    EXPECT_EQ(a.platform.speeds, b.platform.speeds);
    EXPECT_NE(a.app.work, Generate({f, 20, 10, 100}).app.work);
  }
}

TEST(GenerateTest, BatchUsesConsecutiveSeeds) {
  const auto batch = GenerateBatch({Family::kE3, 5, 10, 7}, 3);
  ASSERT_EQ(batch.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(batch[k].app.work,
              Generate({Family::kE3, 5, 10, 7u + k}).app.work);
  }
}

TEST(GenerateTest, NamesAndErrors) {
  EXPECT_EQ(InstanceFileName({Family::kE1, 10, 10, 42}), "e1_n10_p10_s42.pipe");
  EXPECT_EQ(ParseFamily("E3"), Family::kE3);
  EXPECT_EQ(FamilyName(Family::kE4), "e4");
  EXPECT_THROW(ParseFamily("e5"), Error);
  EXPECT_THROW(Generate({Family::kE1, 0, 10, 1}), Error);
  EXPECT_THROW(Generate({Family::kE1, 5, 0, 1}), Error);
}

TEST(ReductionTest, SmallExample) {
  const Hetero1DInstance h = BuildReductionInstance({{1}, {1}, {2}});
  EXPECT_EQ(h.a, (std::vector<double>{5, 1, 1, 10, 14}));
  EXPECT_EQ(h.s, (std::vector<double>{6, 11, 14}));
  EXPECT_EQ(h.bound, 1.0);
}

NmwtsInstance RandomNmwts(std::mt19937_64& rng, int m, int max_value) {
  std::uniform_int_distribution<int> v(1, max_value);
  NmwtsInstance inst;
  for (int i = 0; i < m; ++i) {
    inst.x.push_back(v(rng));
    inst.y.push_back(v(rng));
    inst.z.push_back(v(rng));
  }
  return inst;
}

TEST(ReductionTest, ShapeInvariants) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 4)(rng);
    const NmwtsInstance inst = RandomNmwts(rng, m, 9);
    const int M = inst.MaxValue();
    const Hetero1DInstance h = BuildReductionInstance(inst);
    ASSERT_EQ(static_cast<int>(h.a.size()), (M + 3) * m);
    ASSERT_EQ(static_cast<int>(h.s.size()), 3 * m);
    // Speed groups are separated: B + z < C + M - y < D.
    double max_first = 0, min_second = 1e300, max_second = 0;
    for (int i = 0; i < m; ++i) {
      max_first = std::max(max_first, h.s[i]);
      min_second = std::min(min_second, h.s[m + i]);
      max_second = std::max(max_second, h.s[m + i]);
      EXPECT_EQ(h.s[2 * m + i], 7.0 * M);
    }
    EXPECT_LT(max_first, min_second);
    EXPECT_LT(max_second, 7.0 * M);
    double total_a = 0, total_s = 0;
    for (double a : h.a) total_a += a;
    for (double s : h.s) total_s += s;
    // The construction is tight exactly when the sums match.
    int sx = 0, sy = 0, sz = 0;
    for (int i = 0; i < m; ++i) {
      sx += inst.x[i];
      sy += inst.y[i];
      sz += inst.z[i];
    }
    EXPECT_EQ(total_a - total_s, static_cast<double>(sx + sy - sz));
  }
}

TEST(ReductionTest, AgreesWithMatchingSolverOnBalancedSums) {
  std::mt19937_64 rng(32);
  int yes = 0, no = 0;
  for (int t = 0; t < 600; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    NmwtsInstance inst = RandomNmwts(rng, m, 3);
    if (t % 2 == 0) {
      // Plant a solution.
      for (int i = 0; i < m; ++i) inst.z[i] = inst.x[i] + inst.y[(i + 1) % m];
    } else {
      // Balance the sums through the last target.
      int rest = 0;
      for (int i = 0; i < m; ++i) rest += inst.x[i] + inst.y[i];
      for (int i = 0; i + 1 < m; ++i) rest -= inst.z[i];
      if (rest < 1 || rest > 6) continue;
      inst.z[m - 1] = rest;
    }
    const bool expected = testing::SolveNmwts(inst.x, inst.y, inst.z);
    EXPECT_EQ(DecideHetero1DPartition(BuildReductionInstance(inst)).feasible,
              expected)
        << "trial " << t;
    (expected ? yes : no)++;
  }
  EXPECT_GT(yes, 100);
  EXPECT_GT(no, 20);
}

TEST(ReductionTest, OversizedSourceSumsAreInfeasible) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 100; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const NmwtsInstance inst = RandomNmwts(rng, m, 6);
    int excess = 0;
    for (int i = 0; i < m; ++i) excess += inst.x[i] + inst.y[i] - inst.z[i];
    if (excess <= 0) continue;
    EXPECT_FALSE(DecideHetero1DPartition(BuildReductionInstance(inst)).feasible);
  }
}

// With slack on the target side the partition instance can have room to
// spare even though no exact matching exists.
TEST(ReductionTest, UndersizedSourceSumsCanBeFeasible) {
  const NmwtsInstance inst{{2}, {1}, {4}};
  EXPECT_FALSE(testing::SolveNmwts(inst.x, inst.y, inst.z));
  EXPECT_TRUE(DecideHetero1DPartition(BuildReductionInstance(inst)).feasible);
}

}  // namespace
}  // namespace pipemap
