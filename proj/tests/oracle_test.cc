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

#include "panpredict/oracle.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "panpredict/errors.h"
#include "panpredict/instance.h"
#include "test_util.h"

namespace panpredict {
namespace {

Problem AllOnes() {
  Instance inst;
  inst.contexts = {"a", "b", "c"};
  inst.mass = {0.2, 0.3, 0.5};
  inst.eta = {1.0, 1.0, 1.0};
  inst.groups = {GroupSpec{"X", {1, 1, 1}}};
  inst.hypotheses = {HypothesisSpec{"h", HypothesisKind::kReal, {0.1, 0.5, 0.9}}};
  return Problem(inst, PredictionGrid(0.1));
}

TEST(OracleKindTest, NamesRoundTrip) {
  for (OracleKind k : {OracleKind::kExact, OracleKind::kFreshSample,
                       OracleKind::kExponentialMechanism}) {
    EXPECT_EQ(ParseOracleKind(OracleKindName(k)), k);
  }
  EXPECT_THROW(ParseOracleKind("greedy"), ValidationError);
}

TEST(SampleSizeTest, FreshSampleClosedForm) {
  EXPECT_EQ(FreshSampleSize(100, 50, 0.1, 0.05),
            static_cast<std::uint64_t>(
                std::ceil(2 * std::log(6.0 * 100 * 50 / 0.1) / (0.05 * 0.05))));
  EXPECT_THROW(FreshSampleSize(100, 50, 0.0, 0.05), DomainError);
  EXPECT_THROW(FreshSampleSize(100, 50, 0.1, 0.0), DomainError);
  EXPECT_THROW(FreshSampleSize(100, 50, 0.1, 1e-12), BudgetError);
}

TEST(SampleCounterTest, BudgetIsCheckedBeforeCharging) {
  SampleCounter counter(100);
  counter.Charge(60, "first");
  EXPECT_EQ(counter.count(), 60u);
  EXPECT_THROW(counter.Charge(41, "second"), BudgetError);
  EXPECT_EQ(counter.count(), 60u);
  counter.Charge(40, "third");
  EXPECT_EQ(counter.count(), 100u);
  SampleCounter unlimited;
  unlimited.Charge(1ull << 60, "big");
  EXPECT_EQ(unlimited.count(), 1ull << 60);
}

TEST(BestResponseOracleTest, ExactFindsTheAllPositiveResidual) {
  const Problem problem = AllOnes();
  const ObjectiveCover cover =
      BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
  OracleSettings s;
  s.kind = OracleKind::kExact;
  BestResponseOracle oracle(cover, problem.distribution(), s);
  EXPECT_EQ(oracle.sample_size(), 0u);
  Rng rng(41);
  SampleCounter counter;
  const OracleResponse r =
      oracle.Respond(DeterministicPredictor::Constant(3, 0), rng, counter);
  const auto c = cover.Decode(r.id);
  EXPECT_EQ(c.sigma, +1);
  EXPECT_DOUBLE_EQ(r.estimate, 1.0);
  // Every threshold is active at p = 0; the top one attains the same value.
  const BiasTable b = cover.Biases(PredictionLaw(DeterministicPredictor::Constant(3, 0)),
                                   problem.distribution());
  EXPECT_DOUBLE_EQ(cover.Value(cover.Encode(+1, c.g, c.f, problem.grid().last()), b),
                   1.0);
  EXPECT_EQ(counter.count(), 0u);
}

TEST(BestResponseOracleTest, FreshSampleIsNearOptimalAndCharged) {
  std::mt19937_64 gen(42);
  int good = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    const Instance inst = testing::RandomInstance(gen);
    const Problem problem(inst, PredictionGrid(0.2));
    const ObjectiveCover cover =
        BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
    const auto p = testing::RandomPredictor(gen, problem.grid(), inst.contexts.size());
    const BiasTable exact = cover.Biases(PredictionLaw(p), problem.distribution());
    const double best = cover.Value(cover.ArgMax(exact), exact);
    OracleSettings s;
    s.kind = OracleKind::kFreshSample;
    s.tolerance = 0.05;
    s.delta = 0.1;
    s.horizon = 1;
    BestResponseOracle oracle(cover, problem.distribution(), s);
    Rng rng(43 + trial);
    SampleCounter counter;
    const OracleResponse r = oracle.Respond(p, rng, counter);
    EXPECT_EQ(counter.count(), oracle.sample_size());
    EXPECT_EQ(oracle.sample_size(), FreshSampleSize(cover.size(), 1, 0.1, 0.05));
    const double achieved = cover.Value(r.id, exact);
    EXPECT_LE(achieved, best + 1e-12);
    good += achieved >= best - s.tolerance;
  }
  EXPECT_GE(good, trials - 2);
}

TEST(BestResponseOracleTest, ExponentialMechanismDrawsOnce) {
  const Problem problem = AllOnes();
  const ObjectiveCover cover =
      BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
  OracleSettings s;
  s.kind = OracleKind::kExponentialMechanism;
  s.tolerance = 0.2;
  s.horizon = 10;
  BestResponseOracle oracle(cover, problem.distribution(), s);
  EXPECT_GT(oracle.settings().em_rate, 0.0);
  Rng rng(44);
  SampleCounter counter;
  const auto p = DeterministicPredictor::Constant(3, 0);
  double total = 0.0;
  const int rounds = 10;
  for (int t = 0; t < rounds; ++t) total += oracle.Respond(p, rng, counter).estimate;
  EXPECT_EQ(counter.count(), oracle.sample_size());
  EXPECT_GT(total / rounds, 0.8);
}

TEST(BestResponseOracleTest, BudgetStopsTheDraw) {
  const Problem problem = AllOnes();
  const ObjectiveCover cover =
      BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
  OracleSettings s;
  s.kind = OracleKind::kFreshSample;
  s.tolerance = 0.1;
  BestResponseOracle oracle(cover, problem.distribution(), s);
  Rng rng(45);
  SampleCounter counter(oracle.sample_size() - 1);
  EXPECT_THROW(oracle.Respond(DeterministicPredictor::Constant(3, 0), rng, counter),
               BudgetError);
  EXPECT_EQ(counter.count(), 0u);
}

}  // namespace
}  // namespace panpredict
