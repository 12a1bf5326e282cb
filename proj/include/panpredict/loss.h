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

#ifndef PANPREDICT_LOSS_H_
#define PANPREDICT_LOSS_H_

#include <span>
#include <string>
#include <vector>

#include "panpredict/grid.h"

namespace panpredict {

// The action space Y-hat of a loss: every grid point, or just {0, 1}.
enum class ActionSpace { kGrid, kBinary };

// File-level description of a loss. `type` is one of zero-one, square, hinge,
// pinball or table; tables carry explicit per-action values.
struct LossSpec {
  std::string name;
  std::string type;
  double tau = 0.25;                  // pinball only
  ActionSpace space = ActionSpace::kGrid;  // table only
  std::vector<double> loss0;          // table only: l(a, 0) per action
  std::vector<double> loss1;          // table only: l(a, 1) per action

  friend bool operator==(const LossSpec&, const LossSpec&) = default;
};

// zero-one, square, hinge, and pinball(0.25).
std::vector<LossSpec> StandardLossSpecs();

// Closed form of a named standard loss at an arbitrary prediction in [0, 1]
// (binary-space losses round at 1/2). Throws ValidationError for tables.
double EvaluateStandardLoss(const LossSpec& spec, double prediction, int y);

// Tabulated loss l(a, y) over the actions of its space. Actions are reported
// as grid indices so they compose with predictors and hypotheses.
class LossTable {
 public:
  // Validates shape, rescales by 1/V when the variation V exceeds one, then
  // requires all entries to lie in [-1, 1]. Throws ValidationError.
  LossTable(std::string name, ActionSpace space, const PredictionGrid& grid,
            std::vector<double> loss0, std::vector<double> loss1);

  const std::string& name() const { return name_; }
  ActionSpace space() const { return space_; }
  std::size_t num_actions() const { return actions_.size(); }
  // Grid index of the a-th action.
  GridIndex action(std::size_t a) const { return actions_[a]; }
  std::span<const GridIndex> actions() const { return actions_; }
  // Loss of predicting the value at grid index `prediction`. For binary
  // losses the prediction must be an endpoint; throws DomainError otherwise.
  double Loss(GridIndex prediction, int y) const;
  double LossOfAction(std::size_t a, int y) const {
    return y ? loss1_[a] : loss0_[a];
  }
  // Whether `prediction` is an admissible action.
  bool Admits(GridIndex prediction) const;
  // sup_y total variation in the first argument, after normalization.
  double variation() const { return variation_; }
  // Factor the input table was divided by (1 when V <= 1).
  double scale() const { return scale_; }
  // Cached k_l(p) for every grid point p.
  GridIndex PostProcessed(GridIndex p) const { return post_processed_[p]; }
  std::size_t grid_size() const { return post_processed_.size(); }

 private:
  std::size_t ActionOf(GridIndex prediction) const;

  std::string name_;
  ActionSpace space_;
  std::vector<GridIndex> actions_;
  std::vector<double> loss0_;
  std::vector<double> loss1_;
  std::vector<GridIndex> post_processed_;
  GridIndex last_;
  double variation_ = 0.0;
  double scale_ = 1.0;
};

// Builds the table for a spec on the given grid.
LossTable BuildLoss(const LossSpec& spec, const PredictionGrid& grid);

// Total variation of a sequence, sum_i |f(i+1) - f(i)|.
double TotalVariation(std::span<const double> values);

// Delta l(a) = l(a, 1) - l(a, 0) for every action of the loss.
std::vector<double> DiscreteDerivative(const LossTable& loss);

// Delta l(k_l(p)) for every grid point p: the discrete derivative of the
// post-processed proper scoring rule l(k_l(.), y).
std::vector<double> PostProcessedDerivative(const LossTable& loss);

// k_l(p) = argmin over actions of p l(a, 1) + (1 - p) l(a, 0). Ties (within
// 1e-12) go to the largest action. Returns the grid index of the action.
GridIndex PostProcess(const LossTable& loss, const PredictionGrid& grid,
                      GridIndex p);

}  // namespace panpredict

#endif  // PANPREDICT_LOSS_H_
