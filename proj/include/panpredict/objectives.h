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

#ifndef PANPREDICT_OBJECTIVES_H_
#define PANPREDICT_OBJECTIVES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "panpredict/distribution.h"
#include "panpredict/grid.h"
#include "panpredict/hypothesis.h"
#include "panpredict/predictor.h"

namespace panpredict {

// Hypothesis index of the empty slice, whose weighting function is f = 1.
inline constexpr int kEmptyHypothesis = -1;

// One objective l_{sigma, v, w, h, g}. The weighting function is
// f(x) = 1[h(x) <= w], or f = 1 for the empty slice.
struct ObjectiveParams {
  int sigma = 1;
  GridIndex v = 0;
  GridIndex w = 0;
  int h = kEmptyHypothesis;
  std::size_t g = 0;
  friend bool operator==(const ObjectiveParams&, const ObjectiveParams&) = default;
};

// f(x) = 1[h(x) <= w] as a membership vector.
Membership SliceFunction(const HypothesisClass& hypotheses,
                         std::size_t num_contexts, int h, GridIndex w);

// E[(y - p(x)) 1[p(x) <= v] f(x) | g(x) = 1], exact. Randomized predictors
// average the bias over their components.
double RawBias(const ObjectiveParams& theta, const PredictionLaw& p,
               const PredictionGrid& grid, const FiniteDistribution& d, const GroupFamily& groups,
               const HypothesisClass& hypotheses);
double RawBias(const ObjectiveParams& theta, const DeterministicPredictor& p,
               const PredictionGrid& grid, const FiniteDistribution& d, const GroupFamily& groups,
               const HypothesisClass& hypotheses);

// Pointwise rescaled objective
//   1/2 (1 + sqrt(gamma/P_g) sigma (y - p(x)) 1[p(x) <= v] f(x) 1[g(x) = 1]).
double PointwiseObjective(const ObjectiveParams& theta,
                          const PredictionGrid& grid, GridIndex prediction,
                          std::size_t x, int y, const GroupFamily& groups,
                          const HypothesisClass& hypotheses);

// Exact expectation of the pointwise objective over D.
double EvalRescaled(const ObjectiveParams& theta, const DeterministicPredictor& p,
                    const PredictionGrid& grid, const FiniteDistribution& d,
                    const GroupFamily& groups, const HypothesisClass& hypotheses);

// Sample mean of the pointwise objective. Throws DomainError on an empty
// sample.
double EvalRescaledEmpirical(const ObjectiveParams& theta,
                             const DeterministicPredictor& p,
                             const PredictionGrid& grid,
                             std::span<const LabeledPoint> sample,
                             const GroupFamily& groups,
                             const HypothesisClass& hypotheses);
double EvalRescaledEmpirical(const ObjectiveParams& theta,
                             const DeterministicPredictor& p,
                             const PredictionGrid& grid,
                             const EmpiricalSample& sample,
                             const GroupFamily& groups,
                             const HypothesisClass& hypotheses);

// Unnormalized sublevel biases B(g, f, v) = E[(y - p(x)) 1[p(x) <= v] f(x)
// 1[g(x) = 1]] for every group, cover function and threshold. An objective's
// value is 1/2 + 1/2 sigma sqrt(gamma/P_g) B(g, f, v).
class BiasTable {
 public:
  BiasTable(std::size_t num_groups, std::size_t num_functions,
            std::size_t grid_size)
      : num_functions_(num_functions),
        grid_size_(grid_size),
        values_(num_groups * num_functions * grid_size, 0.0) {}
  double at(std::size_t g, std::size_t f, GridIndex v) const {
    return values_[(g * num_functions_ + f) * grid_size_ + v];
  }
  double& at(std::size_t g, std::size_t f, GridIndex v) {
    return values_[(g * num_functions_ + f) * grid_size_ + v];
  }

 private:
  std::size_t num_functions_;
  std::size_t grid_size_;
  std::vector<double> values_;
};

// The finite rescaled family over (sigma, v, f, g), with every function
// f = 1[h <= w] materialized once. Function 0 is always the empty slice
// f = 1. Objectives are numbered sigma-major: +1 before -1, then group, then
// function, then v.
class ObjectiveCover {
 public:
  // The hypothesis class may be empty, leaving only the empty slice.
  // Throws ValidationError for an empty group family.
  ObjectiveCover(const PredictionGrid& grid, const GroupFamily& groups,
                 const HypothesisClass& hypotheses);

  std::size_t size() const { return 2 * num_groups_ * num_functions() * grid_size_; }
  // Size of the product {+-1} x grid x grid x H x G before deduplication
  // (2 x grid x G when H is empty).
  std::uint64_t pre_dedup_size() const { return pre_dedup_size_; }
  double gamma() const { return gamma_; }
  std::size_t num_groups() const { return num_groups_; }
  std::size_t grid_size() const { return grid_size_; }
  std::size_t num_contexts() const { return num_contexts_; }
  std::size_t num_functions() const { return functions_.size(); }
  const Membership& function(std::size_t f) const { return functions_[f]; }
  // Representative (h, w) of a function: its first occurrence.
  int function_hypothesis(std::size_t f) const { return function_h_[f]; }
  GridIndex function_threshold(std::size_t f) const { return function_w_[f]; }
  // Function id of 1[h <= w]; the empty slice maps to 0.
  std::size_t FunctionOf(int h, GridIndex w) const;
  bool in_group(std::size_t g, std::size_t x) const {
    return group_members_[g][x] != 0;
  }
  // sqrt(gamma / P_g).
  double scale(std::size_t g) const { return scale_[g]; }
  double group_mass(std::size_t g) const { return group_mass_[g]; }

  struct Coordinates {
    int sigma;
    std::size_t g;
    std::size_t f;
    GridIndex v;
  };
  Coordinates Decode(std::size_t id) const;
  std::size_t Encode(int sigma, std::size_t g, std::size_t f, GridIndex v) const;
  ObjectiveParams params(std::size_t id) const;

  // Exact biases of a (possibly randomized) predictor under D.
  BiasTable Biases(const PredictionLaw& p, const FiniteDistribution& d) const;
  // Empirical biases of a deterministic predictor over a sample.
  BiasTable Biases(const DeterministicPredictor& p,
                   const EmpiricalSample& sample) const;

  double Value(std::size_t id, const BiasTable& biases) const;
  // Values of every objective, in id order.
  std::vector<double> Values(const BiasTable& biases) const;
  // First id attaining the maximal value.
  std::size_t ArgMax(const BiasTable& biases) const;

  // Pointwise objective value at (x, y) for a prediction at grid index p.
  double Pointwise(std::size_t id, std::size_t x, int y, GridIndex p) const;
  // Whether every indicator of the objective is on at x for prediction p.
  bool Active(std::size_t id, std::size_t x, GridIndex p) const;

  // CSV with columns sigma,v,w_or_fid,h,g,value evaluated at a predictor.
  // w_or_fid is the representative threshold w of the function.
  std::string DumpCsv(const BiasTable& biases, const HypothesisClass& hypotheses,
                      const GroupFamily& groups) const;

  const PredictionGrid& grid() const { return grid_; }

 private:
  PredictionGrid grid_;
  std::size_t grid_size_;
  std::size_t num_groups_;
  std::size_t num_contexts_;
  std::uint64_t pre_dedup_size_;
  double gamma_;
  std::vector<Membership> group_members_;
  std::vector<double> group_mass_;
  std::vector<double> scale_;
  std::vector<Membership> functions_;
  std::vector<int> function_h_;
  std::vector<GridIndex> function_w_;
  // function_of_[h][w] for real h >= 0.
  std::vector<std::vector<std::size_t>> function_of_;
};

// The cover over a nonempty hypothesis class. Throws ValidationError when H
// or G is empty.
ObjectiveCover BuildCover(const PredictionGrid& grid, const GroupFamily& groups,
                          const HypothesisClass& hypotheses);

}  // namespace panpredict

#endif  // PANPREDICT_OBJECTIVES_H_
