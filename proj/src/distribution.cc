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

#include "panpredict/distribution.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace panpredict {

FiniteDistribution::FiniteDistribution(std::vector<std::string> contexts,
                                       std::vector<double> mass,
                                       std::vector<double> eta)
    : contexts_(std::move(contexts)),
      mass_(std::move(mass)),
      eta_(std::move(eta)) {
  if (contexts_.empty()) throw ValidationError("distribution has no contexts");
  if (mass_.size() != contexts_.size() || eta_.size() != contexts_.size()) {
    throw ValidationError("contexts, mass and eta must have equal length");
  }
  std::set<std::string> seen;
  for (const auto& c : contexts_) {
    if (!seen.insert(c).second) {
      throw ValidationError("duplicate context id '" + c + "'");
    }
  }
  double total = 0.0;
  for (std::size_t x = 0; x < mass_.size(); ++x) {
    if (!(mass_[x] >= 0.0) || !std::isfinite(mass_[x])) {
      throw ValidationError("negative or non-finite mass at context '" +
                            contexts_[x] + "'");
    }
    if (!(eta_[x] >= 0.0 && eta_[x] <= 1.0)) {
      throw ValidationError("eta outside [0, 1] at context '" + contexts_[x] +
                            "'");
    }
    total += mass_[x];
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw ValidationError("masses sum to " + std::to_string(total) +
                          ", expected 1");
  }
}

double GroupMass(const FiniteDistribution& d,
                 std::span<const std::uint8_t> group) {
  double total = 0.0;
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (group[x]) total += d.mass(x);
  }
  return total;
}

GroupFamily::GroupFamily(const FiniteDistribution& d,
                         std::vector<std::string> names,
                         std::vector<Membership> members)
    : names_(std::move(names)), members_(std::move(members)) {
  if (names_.size() != members_.size()) {
    throw ValidationError("group names and memberships differ in length");
  }
  masses_.reserve(members_.size());
  for (std::size_t g = 0; g < members_.size(); ++g) {
    if (members_[g].size() != d.size()) {
      throw ValidationError("group '" + names_[g] +
                            "' has the wrong number of entries");
    }
    for (auto& bit : members_[g]) {
      if (bit > 1) throw ValidationError("group '" + names_[g] + "' is not binary");
    }
    const double m = GroupMass(d, members_[g]);
    if (m <= 0.0) {
      throw DegenerateGroupError("group '" + names_[g] + "' has zero mass");
    }
    masses_.push_back(m);
  }
}

GroupFamily GroupFamily::WholeDomain(const FiniteDistribution& d) {
  return GroupFamily(d, {"X"}, {Membership(d.size(), 1)});
}

double GroupFamily::gamma() const {
  if (masses_.empty()) throw ValidationError("group family is empty");
  return *std::min_element(masses_.begin(), masses_.end());
}

EmpiricalSample::EmpiricalSample(std::span<const LabeledPoint> points,
                                 std::size_t num_contexts)
    : EmpiricalSample(num_contexts) {
  for (const auto& pt : points) Add(pt.context, pt.label);
}

void EmpiricalSample::Add(std::size_t x, int y, std::uint64_t count) {
  if (x >= ones_.size()) throw DomainError("sample context out of range");
  (y ? ones_ : zeros_)[x] += count;
  size_ += count;
}

DistributionSampler::DistributionSampler(const FiniteDistribution& d) {
  cell_prob_.reserve(2 * d.size());
  for (std::size_t x = 0; x < d.size(); ++x) {
    cell_prob_.push_back(d.mass(x) * (1.0 - d.eta(x)));
    cell_prob_.push_back(d.mass(x) * d.eta(x));
  }
  cumulative_.resize(cell_prob_.size());
  std::partial_sum(cell_prob_.begin(), cell_prob_.end(), cumulative_.begin());
}

LabeledPoint DistributionSampler::Draw(Rng& rng) const {
  std::uniform_real_distribution<double> unif(0.0, cumulative_.back());
  const double u = unif(rng);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  auto cell = static_cast<std::size_t>(it - cumulative_.begin());
  cell = std::min(cell, cumulative_.size() - 1);
  // Never land on a zero-probability cell through rounding at the boundary.
  while (cell_prob_[cell] == 0.0 && cell > 0) --cell;
  return {cell / 2, static_cast<int>(cell % 2)};
}

EmpiricalSample DistributionSampler::DrawMany(std::uint64_t m, Rng& rng) const {
  EmpiricalSample sample(cell_prob_.size() / 2);
  std::size_t last_positive = cell_prob_.size() - 1;
  while (last_positive > 0 && cell_prob_[last_positive] == 0.0) --last_positive;
  std::uint64_t remaining = m;
  double remaining_prob = cumulative_.back();
  for (std::size_t cell = 0; cell <= last_positive && remaining > 0; ++cell) {
    std::uint64_t k = 0;
    if (cell == last_positive || cell_prob_[cell] >= remaining_prob) {
      k = remaining;
    } else if (cell_prob_[cell] > 0.0) {
      std::binomial_distribution<std::uint64_t> binom(
          remaining, std::clamp(cell_prob_[cell] / remaining_prob, 0.0, 1.0));
      k = binom(rng);
    }
    if (k > 0) sample.Add(cell / 2, static_cast<int>(cell % 2), k);
    remaining -= k;
    remaining_prob -= cell_prob_[cell];
  }
  return sample;
}

}  // namespace panpredict
