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

#ifndef PANPREDICT_PREDICTOR_H_
#define PANPREDICT_PREDICTOR_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "panpredict/distribution.h"
#include "panpredict/grid.h"

namespace panpredict {

// p: X -> I_lambda, stored as grid indices.
class DeterministicPredictor {
 public:
  DeterministicPredictor() = default;
  explicit DeterministicPredictor(std::vector<GridIndex> values)
      : values_(std::move(values)) {}
  // Quantizes arbitrary probabilities onto the grid.
  static DeterministicPredictor FromProbabilities(const PredictionGrid& grid,
                                                  std::span<const double> p);
  // Same value everywhere.
  static DeterministicPredictor Constant(std::size_t num_contexts,
                                         GridIndex value) {
    return DeterministicPredictor(std::vector<GridIndex>(num_contexts, value));
  }

  std::size_t size() const { return values_.size(); }
  GridIndex operator[](std::size_t x) const { return values_[x]; }
  std::span<const GridIndex> values() const { return values_; }
  // FNV-1a over the index vector; used to fingerprint trace snapshots.
  std::uint64_t Hash() const;

  friend bool operator==(const DeterministicPredictor&,
                         const DeterministicPredictor&) = default;

 private:
  std::vector<GridIndex> values_;
};

// Finite mixture over deterministic predictors.
class RandomizedPredictor {
 public:
  RandomizedPredictor() = default;
  // Throws ValidationError if the weights are negative, do not sum to one,
  // or components disagree in size.
  RandomizedPredictor(std::vector<DeterministicPredictor> components,
                      std::vector<double> weights);
  // Uniform mixture, as returned by no-regret dynamics.
  static RandomizedPredictor Uniform(std::vector<DeterministicPredictor> components);

  std::size_t size() const { return components_.size(); }
  std::size_t num_contexts() const {
    return components_.empty() ? 0 : components_.front().size();
  }
  const DeterministicPredictor& component(std::size_t i) const {
    return components_[i];
  }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  // Merges identical components, summing their weights. The mixture law is
  // unchanged; first-occurrence order is kept.
  RandomizedPredictor Compacted() const;

 private:
  std::vector<DeterministicPredictor> components_;
  std::vector<double> weights_;
};

// Per-context law of the prediction under a (possibly randomized) predictor:
// a list of (grid index, probability) pairs for each context. All
// group-conditional quantities of a mixture are linear in this law.
class PredictionLaw {
 public:
  struct Atom {
    GridIndex value;
    double prob;
  };

  explicit PredictionLaw(const DeterministicPredictor& p);
  explicit PredictionLaw(const RandomizedPredictor& p);

  std::size_t size() const { return atoms_.size(); }
  std::span<const Atom> at(std::size_t x) const { return atoms_[x]; }
  bool deterministic() const { return deterministic_; }

 private:
  std::vector<std::vector<Atom>> atoms_;
  bool deterministic_;
};

// Bayes predictor quantized to the grid: x -> Q(eta(x)).
DeterministicPredictor BayesPredictor(const FiniteDistribution& d,
                                      const PredictionGrid& grid);

}  // namespace panpredict

#endif  // PANPREDICT_PREDICTOR_H_
