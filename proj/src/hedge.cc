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

#include "panpredict/hedge.h"

#include <algorithm>
#include <cmath>

#include "panpredict/errors.h"

namespace panpredict {

double HedgeLearningRate(std::size_t num_actions, std::uint64_t horizon) {
  if (num_actions < 2 || horizon == 0) {
    throw DomainError("Hedge needs at least two actions and one round");
  }
  return std::sqrt(8.0 * std::log(static_cast<double>(num_actions)) /
                   static_cast<double>(horizon));
}

double TwoActionHedge::probability() const {
  // 1 / (1 + exp(log_w0 - log_w1)), written to avoid overflow.
  const double d = log_w0_ - log_w1_;
  if (d >= 0.0) {
    const double e = std::exp(-d);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(d));
}

void TwoActionHedge::Update(double cost0, double cost1) {
  log_w0_ -= eta_ * cost0;
  log_w1_ -= eta_ * cost1;
  const double top = std::max(log_w0_, log_w1_);
  log_w0_ -= top;
  log_w1_ -= top;
}

HedgeLearner::HedgeLearner(std::size_t num_contexts, double learning_rate)
    : eta_(learning_rate), contexts_(num_contexts, TwoActionHedge(learning_rate)) {}

DeterministicPredictor HedgeLearner::Snapshot(const PredictionGrid& grid) const {
  std::vector<GridIndex> values(contexts_.size());
  for (std::size_t x = 0; x < contexts_.size(); ++x) {
    values[x] = grid.Quantize(contexts_[x].probability());
  }
  return DeterministicPredictor(std::move(values));
}

AdversaryHedge::AdversaryHedge(std::size_t num_actions, double learning_rate)
    : eta_(learning_rate),
      weights_(num_actions, 1.0),
      total_(static_cast<double>(num_actions)) {
  if (num_actions == 0) throw DomainError("Hedge over an empty action set");
}

void AdversaryHedge::Reward(std::size_t action, double gain) {
  const double old = weights_[action];
  weights_[action] = old * std::exp(eta_ * gain);
  total_ += weights_[action] - old;
}

void AdversaryHedge::EndRound() {
  const double k = static_cast<double>(weights_.size());
  if (total_ > 1e100 * k || total_ < 1e-100 * k) {
    const double s = k / total_;
    for (double& w : weights_) w *= s;
  }
  // Incremental totals drift; recompute every round to keep sampling exact.
  total_ = 0.0;
  for (double w : weights_) total_ += w;
}

double AdversaryHedge::probability(std::size_t action) const {
  return weights_[action] / total_;
}

std::size_t AdversaryHedge::Sample(Rng& rng) const {
  const double u = std::uniform_real_distribution<double>(0.0, total_)(rng);
  double acc = 0.0;
  for (std::size_t a = 0; a < weights_.size(); ++a) {
    acc += weights_[a];
    if (u < acc) return a;
  }
  // Rounding can leave u just above the running sum.
  for (std::size_t a = weights_.size(); a-- > 0;) {
    if (weights_[a] > 0.0) return a;
  }
  return weights_.size() - 1;
}

}  // namespace panpredict
