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

#include "panpredict/objectives.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "panpredict/diagnostics.h"
#include "panpredict/errors.h"
#include "test_util.h"

namespace panpredict {
namespace {

Instance OneRealHypothesisPair() {
  Instance inst;
  inst.contexts = {"a", "b", "c"};
  inst.mass = {0.2, 0.3, 0.5};
  inst.eta = {0.1, 0.6, 1.0};
  inst.groups = {GroupSpec{"X", {1, 1, 1}}};
  inst.hypotheses = {HypothesisSpec{"r1", HypothesisKind::kReal, {0.12, 0.5, 0.93}},
                     HypothesisSpec{"r2", HypothesisKind::kReal, {0.7, 0.2, 0.4}}};
  return inst;
}

TEST(BuildCoverTest, CountsTheFullProductBeforeDedup) {
  const Problem problem(OneRealHypothesisPair(), PredictionGrid(0.1));
  const ObjectiveCover cover =
      BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
  EXPECT_EQ(cover.pre_dedup_size(), 2u * 11 * (11 * 2) * 1);
  EXPECT_EQ(cover.pre_dedup_size(), 484u);
  EXPECT_LE(cover.size(), cover.pre_dedup_size());
  EXPECT_DOUBLE_EQ(cover.gamma(), 1.0);
}

TEST(BuildCoverTest, SingleBinaryHypothesisOnTheCoarsestGrid) {
  Instance inst;
  inst.contexts = {"a", "b"};
  inst.mass = {0.5, 0.5};
  inst.eta = {0.0, 1.0};
  inst.groups = {GroupSpec{"X", {1, 1}}};
  inst.hypotheses = {HypothesisSpec{"h", HypothesisKind::kBinary, {0.0, 1.0}}};
  const Problem problem(inst, PredictionGrid(1.0));
  const ObjectiveCover cover =
      BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
  EXPECT_EQ(cover.pre_dedup_size(), 8u);
  // Distinct functions: 1[h = 0] and the constant 1.
  EXPECT_EQ(cover.num_functions(), 2u);
  EXPECT_EQ(cover.size(), 8u);
}

TEST(BuildCoverTest, EmptyClassesAreConfigurationErrors) {
  Instance inst = OneRealHypothesisPair();
  inst.hypotheses.clear();
  const Problem problem(inst, PredictionGrid(0.1));
  EXPECT_THROW(BuildCover(problem.grid(), problem.groups(), problem.hypotheses()),
               ValidationError);
  // The empty slice alone is still constructible for diagnostics.
  const ObjectiveCover slice(problem.grid(), problem.groups(), problem.hypotheses());
  EXPECT_EQ(slice.num_functions(), 1u);
}

TEST(EvalRescaledTest, BayesPredictorScoresOneHalfEverywhere) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = testing::RandomInstance(rng);
    const Problem problem(inst, PredictionGrid(0.1));
    const auto bayes = BayesPredictor(problem.distribution(), problem.grid());
    const ObjectiveCover cover =
        BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
    const BiasTable b = cover.Biases(PredictionLaw(bayes), problem.distribution());
    for (std::size_t id = 0; id < cover.size(); ++id) {
      EXPECT_NEAR(cover.Value(id, b), 0.5, 1e-12);
      EXPECT_NEAR(EvalRescaled(cover.params(id), bayes, problem.grid(),
                               problem.distribution(), problem.groups(),
                               problem.hypotheses()),
                  0.5, 1e-12);
    }
  }
}

TEST(EvalRescaledTest, HandComputedValues) {
  Instance inst;
  inst.contexts = {"a", "b"};
  inst.mass = {0.5, 0.5};
  inst.eta = {1.0, 1.0};
  inst.groups = {GroupSpec{"X", {1, 1}}};
  inst.hypotheses = {HypothesisSpec{"top", HypothesisKind::kReal, {1.0, 1.0}}};
  const Problem problem(inst, PredictionGrid(0.1));
  const auto zero = DeterministicPredictor::Constant(2, 0);
  ObjectiveParams theta{+1, problem.grid().last(), problem.grid().last(), 0, 0};
  auto eval = [&](const ObjectiveParams& t) {
    return EvalRescaled(t, zero, problem.grid(), problem.distribution(),
                        problem.groups(), problem.hypotheses());
  };
  EXPECT_DOUBLE_EQ(eval(theta), 1.0);
  EXPECT_DOUBLE_EQ(RawBias(theta, zero, problem.grid(), problem.distribution(),
                           problem.groups(), problem.hypotheses()),
                   1.0);
  // f = 1[h <= 0] is empty when h = 1 everywhere.
  theta.w = 0;
  EXPECT_DOUBLE_EQ(eval(theta), 0.5);
}

TEST(EvalRescaledTest, EqualsIdentityInRawBias) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = testing::RandomInstance(rng);
    const Problem problem(inst, PredictionGrid(0.2));
    const auto p = testing::RandomPredictor(rng, problem.grid(), inst.contexts.size());
    const ObjectiveCover cover =
        BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
    for (std::size_t id = 0; id < cover.size(); id += 7) {
      const ObjectiveParams theta = cover.params(id);
      const double raw = RawBias(theta, p, problem.grid(), problem.distribution(),
                                 problem.groups(), problem.hypotheses());
      const double pg = problem.groups().mass(theta.g);
      const double expected =
          0.5 + 0.5 * theta.sigma * std::sqrt(cover.gamma() * pg) * raw;
      const double direct = EvalRescaled(theta, p, problem.grid(), problem.distribution(),
                                         problem.groups(), problem.hypotheses());
      EXPECT_NEAR(direct, expected, 1e-12);
      EXPECT_GE(direct, 0.0);
      EXPECT_LE(direct, 1.0);
    }
  }
}

TEST(EvalRescaledTest, CounterexampleBiasOfTheFlippedHypothesisIsZero) {
  const Instance inst = CounterexampleInstance();
  const Problem problem(inst, PredictionGrid(0.1));
  const DeterministicPredictor hp(std::vector<GridIndex>(
      problem.hypotheses().values(1).begin(), problem.hypotheses().values(1).end()));
  const ObjectiveParams theta{+1, problem.grid().last(), problem.grid().last(),
                              kEmptyHypothesis, 0};
  EXPECT_NEAR(RawBias(theta, hp, problem.grid(), problem.distribution(),
                      problem.groups(), problem.hypotheses()),
              0.0, 1e-12);
}

TEST(EvalRescaledEmpiricalTest, ZeroResidualSample) {
  const Problem problem(CounterexampleInstance(), PredictionGrid(0.1));
  const auto p = DeterministicPredictor::Constant(2, problem.grid().last());
  const std::vector<LabeledPoint> one{{1, 1}};
  const ObjectiveCover cover =
      BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
  for (std::size_t id = 0; id < cover.size(); ++id) {
    EXPECT_DOUBLE_EQ(EvalRescaledEmpirical(cover.params(id), p, problem.grid(), one,
                                           problem.groups(), problem.hypotheses()),
                     0.5);
  }
  EXPECT_THROW(EvalRescaledEmpirical(cover.params(0), p, problem.grid(),
                                     std::vector<LabeledPoint>{}, problem.groups(),
                                     problem.hypotheses()),
               DomainError);
}

TEST(EvalRescaledEmpiricalTest, SupportWithMultiplicitiesMatchesExact) {
  Instance inst;
  inst.contexts = {"a", "b"};
  inst.mass = {0.25, 0.75};
  inst.eta = {0.5, 2.0 / 3.0};
  inst.groups = {GroupSpec{"X", {1, 1}}, GroupSpec{"b", {0, 1}}};
  inst.hypotheses = {HypothesisSpec{"h", HypothesisKind::kReal, {0.3, 0.8}}};
  const Problem problem(inst, PredictionGrid(0.1));
  std::vector<LabeledPoint> pts;
  for (int i = 0; i < 3; ++i) {
    pts.push_back({0, 1});
    pts.push_back({0, 0});
  }
  for (int i = 0; i < 12; ++i) pts.push_back({1, 1});
  for (int i = 0; i < 6; ++i) pts.push_back({1, 0});
  const EmpiricalSample counts(pts, 2);
  const ObjectiveCover cover =
      BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
  const DeterministicPredictor p({4, 2});
  for (std::size_t id = 0; id < cover.size(); ++id) {
    const ObjectiveParams theta = cover.params(id);
    const double exact = EvalRescaled(theta, p, problem.grid(), problem.distribution(),
                                      problem.groups(), problem.hypotheses());
    EXPECT_NEAR(EvalRescaledEmpirical(theta, p, problem.grid(), pts, problem.groups(),
                                      problem.hypotheses()),
                exact, 1e-9);
    EXPECT_NEAR(EvalRescaledEmpirical(theta, p, problem.grid(), counts,
                                      problem.groups(), problem.hypotheses()),
                exact, 1e-9);
  }
}

TEST(EvalRescaledEmpiricalTest, HoeffdingBandHoldsInMostTrials) {
  std::mt19937_64 gen(23);
  const Instance inst = testing::RandomInstance(gen);
  const Problem problem(inst, PredictionGrid(0.1));
  const auto p = testing::RandomPredictor(gen, problem.grid(), inst.contexts.size());
  const ObjectiveCover cover =
      BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
  const BiasTable exact_table = cover.Biases(PredictionLaw(p), problem.distribution());
  const std::size_t id = cover.ArgMax(exact_table);
  const double exact = cover.Value(id, exact_table);
  DistributionSampler sampler(problem.distribution());
  const int n = 100000;
  const double band = 3 * 0.5 * std::sqrt(1.0 / n);
  int inside = 0;
  const int trials = 100;
  Rng rng(24);
  for (int t = 0; t < trials; ++t) {
    std::vector<LabeledPoint> pts(n);
    for (auto& z : pts) z = sampler.Draw(rng);
    const double est = EvalRescaledEmpirical(cover.params(id), p, problem.grid(), pts,
                                             problem.groups(), problem.hypotheses());
    inside += std::abs(est - exact) <= band;
  }
  EXPECT_GE(inside, 99);
}

TEST(ObjectiveCoverTest, SignTwinsAreSymmetricAboutOneHalf) {
  std::mt19937_64 rng(25);
  const Instance inst = testing::RandomInstance(rng);
  const Problem problem(inst, PredictionGrid(0.1));
  const ObjectiveCover cover =
      BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
  const auto p = testing::RandomPredictor(rng, problem.grid(), inst.contexts.size());
  const BiasTable b = cover.Biases(PredictionLaw(p), problem.distribution());
  double max_gap = 0.0, max_abs = 0.0;
  for (std::size_t id = 0; id < cover.size(); ++id) {
    const auto c = cover.Decode(id);
    EXPECT_EQ(cover.Encode(c.sigma, c.g, c.f, c.v), id);
    const std::size_t twin = cover.Encode(-c.sigma, c.g, c.f, c.v);
    EXPECT_NEAR(cover.Value(id, b) + cover.Value(twin, b), 1.0, 1e-12);
    max_gap = std::max(max_gap, cover.Value(id, b) - 0.5);
    const double raw = b.at(c.g, c.f, c.v) / cover.group_mass(c.g);
    max_abs = std::max(max_abs, 0.5 * std::sqrt(cover.gamma() * cover.group_mass(c.g)) *
                                    std::abs(raw));
  }
  EXPECT_NEAR(max_gap, max_abs, 1e-12);
}

TEST(ObjectiveCoverTest, DedupNeverChangesTheMaximum) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = testing::RandomInstance(rng);
    const Problem problem(inst, PredictionGrid(0.25));
    const ObjectiveCover cover =
        BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
    const auto p = testing::RandomPredictor(rng, problem.grid(), inst.contexts.size());
    const BiasTable b = cover.Biases(PredictionLaw(p), problem.distribution());
    const double dedup_max = cover.Value(cover.ArgMax(b), b);
    double full_max = 0.0;
    std::uint64_t count = 0;
    for (int sigma : {1, -1}) {
      for (std::size_t g = 0; g < problem.groups().size(); ++g) {
        for (std::size_t h = 0; h < problem.hypotheses().size(); ++h) {
          for (GridIndex w = 0; w <= problem.grid().last(); ++w) {
            for (GridIndex v = 0; v <= problem.grid().last(); ++v) {
              ++count;
              const ObjectiveParams theta{sigma, v, w, static_cast<int>(h), g};
              full_max = std::max(
                  full_max, EvalRescaled(theta, p, problem.grid(), problem.distribution(),
                                         problem.groups(), problem.hypotheses()));
            }
          }
        }
      }
    }
    EXPECT_EQ(count, cover.pre_dedup_size());
    EXPECT_NEAR(dedup_max, full_max, 1e-12);
  }
}

TEST(ObjectiveCoverTest, MixtureBiasesAverageComponentBiases) {
  std::mt19937_64 rng(27);
  const Instance inst = testing::RandomInstance(rng);
  const Problem problem(inst, PredictionGrid(0.2));
  const ObjectiveCover cover =
      BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
  const auto mix = testing::RandomMixture(rng, problem.grid(), inst.contexts.size(), 4);
  const BiasTable m = cover.Biases(PredictionLaw(mix), problem.distribution());
  for (std::size_t id = 0; id < cover.size(); ++id) {
    double avg = 0.0;
    for (std::size_t i = 0; i < mix.size(); ++i) {
      const BiasTable b =
          cover.Biases(PredictionLaw(mix.component(i)), problem.distribution());
      avg += mix.weight(i) * cover.Value(id, b);
    }
    EXPECT_NEAR(cover.Value(id, m), avg, 1e-12);
  }
}

TEST(ObjectiveCoverTest, DumpHasOneRowPerObjective) {
  const Problem problem(OneRealHypothesisPair(), PredictionGrid(0.5));
  const ObjectiveCover cover =
      BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
  const BiasTable b = cover.Biases(
      PredictionLaw(DeterministicPredictor::Constant(3, 1)), problem.distribution());
  std::istringstream in(cover.DumpCsv(b, problem.hypotheses(), problem.groups()));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "sigma,v,w_or_fid,h,g,value");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, cover.size());
}

}  // namespace
}  // namespace panpredict
