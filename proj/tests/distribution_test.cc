// Copyright 2026 The Panpredict Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "panpredict/distribution.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "panpredict/diagnostics.h"
#include "panpredict/errors.h"
#include "test_util.h"

namespace panpredict {
namespace {

FiniteDistribution Coin() { return FiniteDistribution({"a", "b"}, {0.5, 0.5}, {0.0, 1.0}); }

TEST(FiniteDistributionTest, ValidatesInvariants) {
  EXPECT_THROW(FiniteDistribution({"a", "a"}, {0.5, 0.5}, {0, 0}), ValidationError);
  EXPECT_THROW(FiniteDistribution({"a", "b"}, {0.6, 0.5}, {0, 0}), ValidationError);
  EXPECT_THROW(FiniteDistribution({"a", "b"}, {-0.5, 1.5}, {0, 0}), ValidationError);
  EXPECT_THROW(FiniteDistribution({"a"}, {1.0}, {1.5}), ValidationError);
  EXPECT_THROW(FiniteDistribution({"a"}, {1.0, 0.0}, {0.5}), ValidationError);
  EXPECT_NO_THROW(FiniteDistribution({"a", "b"}, {0.5, 0.5 + 1e-13}, {0, 1}));
}

TEST(GroupFamilyTest, MassesAreExactSums) {
  const FiniteDistribution d({"a", "b", "c"}, {0.2, 0.3, 0.5}, {0, 0, 0});
  const GroupFamily g(d, {"ab", "c"}, {{1, 1, 0}, {0, 0, 1}});
  EXPECT_DOUBLE_EQ(g.mass(0), 0.5);
  EXPECT_DOUBLE_EQ(g.mass(1), 0.5);
  EXPECT_DOUBLE_EQ(g.gamma(), 0.5);
  EXPECT_DOUBLE_EQ(GroupFamily::WholeDomain(d).gamma(), 1.0);
}

TEST(GroupFamilyTest, ZeroMassGroupIsDegenerate) {
  const FiniteDistribution d({"a", "b"}, {1.0, 0.0}, {0, 0});
  EXPECT_THROW(GroupFamily(d, {"b"}, {{0, 1}}), DegenerateGroupError);
  EXPECT_THROW(GroupFamily(d, {"none"}, {{0, 0}}), DegenerateGroupError);
}

TEST(GroupConditionalExpectationTest, ConstantsAndLabels) {
  const FiniteDistribution d = Coin();
  const Membership all{1, 1};
  EXPECT_DOUBLE_EQ(GroupConditionalExpectation(d, all, [](std::size_t, int) { return 0.7; }),
                   0.7);
  EXPECT_DOUBLE_EQ(
      GroupConditionalExpectation(d, all, [](std::size_t, int y) { return y; }), 0.5);
  EXPECT_THROW(GroupConditionalExpectation(d, Membership{0, 0},
                                           [](std::size_t, int) { return 1.0; }),
               DegenerateGroupError);
}

TEST(GroupConditionalExpectationTest, CounterexampleResidualIsZero) {
  const Instance inst = CounterexampleInstance();
  const FiniteDistribution d = inst.Distribution();
  const auto& hp = inst.hypotheses[1].values;
  const double v = GroupConditionalExpectation(
      d, inst.groups[0].members, [&](std::size_t x, int y) { return y - hp[x]; });
  EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(GroupConditionalExpectationTest, AgreesWithMonteCarlo) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const Instance inst = testing::RandomInstance(rng);
    const FiniteDistribution d = inst.Distribution();
    std::vector<double> f0(d.size()), f1(d.size());
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (std::size_t x = 0; x < d.size(); ++x) {
      f0[x] = unit(rng);
      f1[x] = unit(rng);
    }
    const auto& g = inst.groups.back().members;
    const double exact = GroupConditionalExpectation(
        d, g, [&](std::size_t x, int y) { return y ? f1[x] : f0[x]; });
    DistributionSampler sampler(d);
    double sum = 0.0, sum_sq = 0.0;
    std::size_t count = 0;
    for (int i = 0; i < 1000000; ++i) {
      const LabeledPoint z = sampler.Draw(rng);
      if (!g[z.context]) continue;
      const double v = z.label ? f1[z.context] : f0[z.context];
      sum += v;
      sum_sq += v * v;
      ++count;
    }
    ASSERT_GT(count, 1000u);
    const double mean = sum / count;
    const double se = std::sqrt(std::max(sum_sq / count - mean * mean, 1e-12) / count);
    EXPECT_LE(std::abs(mean - exact), 3 * se + 1e-9) << "trial " << trial;
  }
}

TEST(DistributionSamplerTest, DrawManyMatchesCounts) {
  const FiniteDistribution d({"a", "b", "c"}, {0.2, 0.0, 0.8}, {0.5, 1.0, 0.0});
  Rng rng(3);
  DistributionSampler sampler(d);
  const EmpiricalSample s = sampler.DrawMany(100000, rng);
  EXPECT_EQ(s.size(), 100000u);
  std::uint64_t total = 0;
  for (std::size_t x = 0; x < 3; ++x) total += s.ones(x) + s.zeros(x);
  EXPECT_EQ(total, 100000u);
  EXPECT_EQ(s.ones(1) + s.zeros(1), 0u);
  EXPECT_EQ(s.ones(2), 0u);
  EXPECT_NEAR(s.ones(0) / 1e5, 0.1, 0.005);
  EXPECT_NEAR(s.zeros(2) / 1e5, 0.8, 0.005);
}

TEST(DistributionSamplerTest, SameSeedSameDraws) {
  const FiniteDistribution d({"a", "b"}, {0.3, 0.7}, {0.4, 0.9});
  DistributionSampler sampler(d);
  Rng a(9), b(9);
  for (int i = 0; i < 100; ++i) {
    const LabeledPoint p = sampler.Draw(a);
    const LabeledPoint q = sampler.Draw(b);
    EXPECT_EQ(p.context, q.context);
    EXPECT_EQ(p.label, q.label);
  }
}

}  // namespace
}  // namespace panpredict
