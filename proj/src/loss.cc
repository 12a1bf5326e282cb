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

#include "panpredict/loss.h"

#include <algorithm>
#include <cmath>

#include "panpredict/errors.h"

namespace panpredict {
namespace {

constexpr double kTieTolerance = 1e-12;

double Clip(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

std::vector<LossSpec> StandardLossSpecs() {
  std::vector<LossSpec> specs(4);
  specs[0].name = "zero-one";
  specs[0].type = "zero-one";
  specs[0].space = ActionSpace::kBinary;
  specs[1].name = "square";
  specs[1].type = "square";
  specs[2].name = "hinge";
  specs[2].type = "hinge";
  specs[3].name = "pinball";
  specs[3].type = "pinball";
  specs[3].tau = 0.25;
  return specs;
}

double EvaluateStandardLoss(const LossSpec& spec, double prediction, int y) {
  const double t = y ? 1.0 : 0.0;
  if (spec.type == "zero-one") {
    const double label = prediction >= 0.5 ? 1.0 : 0.0;
    return label == t ? 0.0 : 1.0;
  }
  if (spec.type == "square") return (prediction - t) * (prediction - t);
  if (spec.type == "hinge") {
    // Hinge on the signed margin (2y - 1)(2p - 1), clipped to [-1, 1].
    return Clip(std::max(0.0, 1.0 - (2.0 * t - 1.0) * (2.0 * prediction - 1.0)));
  }
  if (spec.type == "pinball") {
    const double r = t - prediction;
    return r >= 0.0 ? spec.tau * r : (spec.tau - 1.0) * r;
  }
  throw ValidationError("loss '" + spec.name + "' has no closed form");
}

double TotalVariation(std::span<const double> values) {
  double v = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    v += std::abs(values[i] - values[i - 1]);
  }
  return v;
}

LossTable::LossTable(std::string name, ActionSpace space,
                     const PredictionGrid& grid, std::vector<double> loss0,
                     std::vector<double> loss1)
    : name_(std::move(name)),
      space_(space),
      loss0_(std::move(loss0)),
      loss1_(std::move(loss1)),
      last_(grid.last()) {
  if (space_ == ActionSpace::kGrid) {
    for (GridIndex i = 0; i < grid.size(); ++i) actions_.push_back(i);
  } else {
    actions_ = {0, grid.last()};
  }
  if (loss0_.size() != actions_.size() || loss1_.size() != actions_.size()) {
    throw ValidationError("loss '" + name_ + "' expects " +
                          std::to_string(actions_.size()) +
                          " entries per label");
  }
  for (std::size_t a = 0; a < actions_.size(); ++a) {
    if (!std::isfinite(loss0_[a]) || !std::isfinite(loss1_[a])) {
      throw ValidationError("loss '" + name_ + "' has non-finite entries");
    }
  }
  const double v = std::max(TotalVariation(loss0_), TotalVariation(loss1_));
  if (v > 1.0) {
    scale_ = v;
    for (auto& e : loss0_) e /= v;
    for (auto& e : loss1_) e /= v;
  }
  variation_ = std::max(TotalVariation(loss0_), TotalVariation(loss1_));
  for (std::size_t a = 0; a < actions_.size(); ++a) {
    if (std::abs(loss0_[a]) > 1.0 || std::abs(loss1_[a]) > 1.0) {
      throw ValidationError("loss '" + name_ + "' leaves [-1, 1]");
    }
  }
  post_processed_.resize(grid.size());
  for (GridIndex p = 0; p < grid.size(); ++p) {
    post_processed_[p] = PostProcess(*this, grid, p);
  }
}

std::size_t LossTable::ActionOf(GridIndex prediction) const {
  if (space_ == ActionSpace::kGrid) return prediction;
  if (prediction == 0) return 0;
  if (prediction == last_) return 1;
  throw DomainError("loss '" + name_ + "' only admits predictions 0 and 1");
}

bool LossTable::Admits(GridIndex prediction) const {
  if (prediction > last_) return false;
  return space_ == ActionSpace::kGrid || prediction == 0 || prediction == last_;
}

double LossTable::Loss(GridIndex prediction, int y) const {
  return LossOfAction(ActionOf(prediction), y);
}

LossTable BuildLoss(const LossSpec& spec, const PredictionGrid& grid) {
  if (spec.type == "table") {
    return LossTable(spec.name, spec.space, grid, spec.loss0, spec.loss1);
  }
  if (spec.type == "pinball" && !(spec.tau > 0.0 && spec.tau < 1.0)) {
    throw ValidationError("pinball tau must lie in (0, 1)");
  }
  const ActionSpace space =
      spec.type == "zero-one" ? ActionSpace::kBinary : ActionSpace::kGrid;
  std::vector<double> l0, l1;
  if (space == ActionSpace::kBinary) {
    for (double a : {0.0, 1.0}) {
      l0.push_back(EvaluateStandardLoss(spec, a, 0));
      l1.push_back(EvaluateStandardLoss(spec, a, 1));
    }
  } else {
    for (double a : grid.values()) {
      l0.push_back(EvaluateStandardLoss(spec, a, 0));
      l1.push_back(EvaluateStandardLoss(spec, a, 1));
    }
  }
  return LossTable(spec.name, space, grid, std::move(l0), std::move(l1));
}

std::vector<double> DiscreteDerivative(const LossTable& loss) {
  std::vector<double> d(loss.num_actions());
  for (std::size_t a = 0; a < d.size(); ++a) {
    d[a] = loss.LossOfAction(a, 1) - loss.LossOfAction(a, 0);
  }
  return d;
}

std::vector<double> PostProcessedDerivative(const LossTable& loss) {
  std::vector<double> d(loss.grid_size());
  for (GridIndex p = 0; p < d.size(); ++p) {
    const GridIndex k = loss.PostProcessed(p);
    d[p] = loss.Loss(k, 1) - loss.Loss(k, 0);
  }
  return d;
}

GridIndex PostProcess(const LossTable& loss, const PredictionGrid& grid,
                      GridIndex p) {
  const double prob = grid.value(p);
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t a = 0; a < loss.num_actions(); ++a) {
    const double value =
        prob * loss.LossOfAction(a, 1) + (1.0 - prob) * loss.LossOfAction(a, 0);
    if (a == 0 || value <= best_value + kTieTolerance) {
      // Later actions are larger, so accepting near-ties moves toward the
      // largest minimizer; keep the true minimum as the reference value.
      if (a == 0 || value < best_value) best_value = value;
      best = a;
    }
  }
  return loss.action(best);
}

}  // namespace panpredict
