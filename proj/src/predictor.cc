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

#include <cmath>
#include <limits>
#include <map>

#include "panpredict/errors.h"

namespace panpredict {

DeterministicPredictor DeterministicPredictor::FromProbabilities(
    const PredictionGrid& grid, std::span<const double> p) {
  std::vector<GridIndex> values;
  values.reserve(p.size());
  for (double v : p) values.push_back(grid.Quantize(v));
  return DeterministicPredictor(std::move(values));
}

std::uint64_t DeterministicPredictor::Hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (GridIndex v : values_) {
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

RandomizedPredictor::RandomizedPredictor(
    std::vector<DeterministicPredictor> components, std::vector<double> weights)
    : components_(std::move(components)), weights_(std::move(weights)) {
  if (components_.empty()) throw ValidationError("mixture has no components");
  if (components_.size() != weights_.size()) {
    throw ValidationError("mixture components and weights differ in length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0)) throw ValidationError("negative mixture weight");
    if (components_[i].size() != components_[0].size()) {
      throw ValidationError("mixture components differ in size");
    }
    total += weights_[i];
  }
  // Rounding in the running sum grows with the number of weights.
  const double slack =
      kMassTolerance + 4.0 * static_cast<double>(weights_.size()) *
                           std::numeric_limits<double>::epsilon();
  if (std::abs(total - 1.0) > slack) {
    throw ValidationError("mixture weights sum to " + std::to_string(total));
  }
}

RandomizedPredictor RandomizedPredictor::Uniform(
    std::vector<DeterministicPredictor> components) {
  const std::size_t n = components.size();
  return RandomizedPredictor(std::move(components),
                             std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

RandomizedPredictor RandomizedPredictor::Compacted() const {
  std::map<std::vector<GridIndex>, std::size_t> slot;
  std::vector<DeterministicPredictor> comps;
  std::vector<double> weights;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    std::vector<GridIndex> key(components_[i].values().begin(),
                               components_[i].values().end());
    auto [it, inserted] = slot.emplace(std::move(key), comps.size());
    if (inserted) {
      comps.push_back(components_[i]);
      weights.push_back(weights_[i]);
    } else {
      weights[it->second] += weights_[i];
    }
  }
  RandomizedPredictor out;
  out.components_ = std::move(comps);
  out.weights_ = std::move(weights);
  return out;
}

PredictionLaw::PredictionLaw(const DeterministicPredictor& p)
    : atoms_(p.size()), deterministic_(true) {
  for (std::size_t x = 0; x < p.size(); ++x) atoms_[x] = {{p[x], 1.0}};
}

PredictionLaw::PredictionLaw(const RandomizedPredictor& p)
    : atoms_(p.num_contexts()), deterministic_(false) {
  for (std::size_t x = 0; x < atoms_.size(); ++x) {
    std::map<GridIndex, double> law;
    for (std::size_t i = 0; i < p.size(); ++i) {
      law[p.component(i)[x]] += p.weight(i);
    }
    atoms_[x].reserve(law.size());
    for (const auto& [value, prob] : law) atoms_[x].push_back({value, prob});
  }
}

DeterministicPredictor BayesPredictor(const FiniteDistribution& d,
                                      const PredictionGrid& grid) {
  return DeterministicPredictor::FromProbabilities(grid, d.etas());
}

}  // namespace panpredict
