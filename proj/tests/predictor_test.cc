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

#include "panpredict/predictor.h"

#include <gtest/gtest.h>

#include <random>

#include "panpredict/errors.h"
#include "test_util.h"

namespace panpredict {
namespace {

TEST(BayesPredictorTest, QuantizesEta) {
  const PredictionGrid grid(0.1);
  {
    const FiniteDistribution d({"a", "b"}, {0.5, 0.5}, {0.0, 1.0});
    const auto p = BayesPredictor(d, grid);
    EXPECT_EQ(grid.value(p[0]), 0.0);
    EXPECT_EQ(grid.value(p[1]), 1.0);
  }
  {
    const FiniteDistribution d({"a"}, {1.0}, {0.5});
    EXPECT_EQ(grid.value(BayesPredictor(d, grid)[0]), 0.5);
  }
  {
    const FiniteDistribution d({"a", "b"}, {0.5, 0.5}, {0.26, 0.74});
    const auto p = BayesPredictor(d, grid);
    EXPECT_DOUBLE_EQ(grid.value(p[0]), 0.3);
    EXPECT_DOUBLE_EQ(grid.value(p[1]), 0.7);
  }
}

TEST(DeterministicPredictorTest, HashSeparatesDistinctPredictors) {
  const DeterministicPredictor a({1, 2, 3});
  const DeterministicPredictor b({1, 2, 4});
  EXPECT_EQ(a.Hash(), DeterministicPredictor({1, 2, 3}).Hash());
  EXPECT_NE(a.Hash(), b.Hash());
}

TEST(RandomizedPredictorTest, ValidatesWeights) {
  const DeterministicPredictor a({0, 1});
  EXPECT_THROW(RandomizedPredictor({a, a}, {0.5, 0.6}), ValidationError);
  EXPECT_THROW(RandomizedPredictor({a, a}, {-0.5, 1.5}), ValidationError);
  EXPECT_THROW(RandomizedPredictor({a, DeterministicPredictor({0})}, {0.5, 0.5}),
               ValidationError);
  EXPECT_THROW(RandomizedPredictor({}, {}), ValidationError);
}

TEST(RandomizedPredictorTest, UniformWeightsAreOneOverT) {
  std::vector<DeterministicPredictor> comps(7, DeterministicPredictor({0, 1}));
  const auto mix = RandomizedPredictor::Uniform(comps);
  for (double w : mix.weights()) EXPECT_DOUBLE_EQ(w, 1.0 / 7);
}

TEST(RandomizedPredictorTest, LongUniformMixturesValidate) {
  const std::size_t n = 200000;
  std::vector<DeterministicPredictor> comps(n, DeterministicPredictor::Constant(2, 1));
  const RandomizedPredictor p = RandomizedPredictor::Uniform(std::move(comps));
  EXPECT_EQ(p.size(), n);
  EXPECT_EQ(p.Compacted().size(), 1u);
}

TEST(RandomizedPredictorTest, CompactingPreservesTheLaw) {
  std::mt19937_64 rng(2);
  const PredictionGrid grid(0.5);
  for (int trial = 0; trial < 50; ++trial) {
    auto mix = testing::RandomMixture(rng, grid, 3, 8);
    const auto compact = mix.Compacted();
    EXPECT_LE(compact.size(), mix.size());
    const PredictionLaw a(mix), b(compact);
    for (std::size_t x = 0; x < 3; ++x) {
      ASSERT_EQ(a.at(x).size(), b.at(x).size());
      for (std::size_t i = 0; i < a.at(x).size(); ++i) {
        EXPECT_EQ(a.at(x)[i].value, b.at(x)[i].value);
        EXPECT_NEAR(a.at(x)[i].prob, b.at(x)[i].prob, 1e-12);
      }
    }
  }
}

TEST(PredictionLawTest, DeterministicHasPointMasses) {
  const PredictionLaw law(DeterministicPredictor({2, 0}));
  EXPECT_TRUE(law.deterministic());
  ASSERT_EQ(law.at(0).size(), 1u);
  EXPECT_EQ(law.at(0)[0].value, 2u);
  EXPECT_EQ(law.at(0)[0].prob, 1.0);
}

}  // namespace
}  // namespace panpredict
