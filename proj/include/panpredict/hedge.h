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

#ifndef PANPREDICT_HEDGE_H_
#define PANPREDICT_HEDGE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "panpredict/distribution.h"
#include "panpredict/grid.h"
#include "panpredict/predictor.h"

namespace panpredict {

// sqrt(8 ln k / T).
double HedgeLearningRate(std::size_t num_actions, std::uint64_t horizon);

// Exponential weights over two actions {0, 1}, kept as log-weights.
class TwoActionHedge {
 public:
  explicit TwoActionHedge(double learning_rate) : eta_(learning_rate) {}
  double learning_rate() const { return eta_; }
  // Probability of action 1.
  double probability() const;
  // w_a <- w_a exp(-eta cost_a). Costs must lie in [0, 1].
  void Update(double cost0, double cost1);

 private:
  double eta_;
  double log_w0_ = 0.0;
  double log_w1_ = 0.0;
};

// Independent two-action Hedge instances, one per context. p(x) is the
// probability of action 1 at x.
class HedgeLearner {
 public:
  HedgeLearner(std::size_t num_contexts, double learning_rate);
  std::size_t size() const { return contexts_.size(); }
  double learning_rate() const { return eta_; }
  std::uint64_t iteration() const { return iteration_; }
  double probability(std::size_t x) const { return contexts_[x].probability(); }
  void Update(std::size_t x, double cost0, double cost1) {
    contexts_[x].Update(cost0, cost1);
  }
  // Marks the end of a round.
  void Advance() { ++iteration_; }
  // Current iterate quantized onto the grid.
  DeterministicPredictor Snapshot(const PredictionGrid& grid) const;

 private:
  double eta_;
  std::vector<TwoActionHedge> contexts_;
  std::uint64_t iteration_ = 0;
};

// Exponential weights over k actions with gains applied to a few actions at
// a time. A cost c is a gain of 1 - c, and only gain differences matter, so
// callers pass the nonzero gain offsets.
class AdversaryHedge {
 public:
  AdversaryHedge(std::size_t num_actions, double learning_rate);
  std::size_t size() const { return weights_.size(); }
  double learning_rate() const { return eta_; }
  // w_a <- w_a exp(eta gain).
  void Reward(std::size_t action, double gain);
  // Renormalizes if weights drifted far from 1. Call once per round.
  void EndRound();
  double probability(std::size_t action) const;
  std::size_t Sample(Rng& rng) const;

 private:
  double eta_;
  std::vector<double> weights_;
  double total_;
};

}  // namespace panpredict

#endif  // PANPREDICT_HEDGE_H_
