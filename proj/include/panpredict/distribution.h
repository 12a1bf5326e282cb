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

#ifndef PANPREDICT_DISTRIBUTION_H_
#define PANPREDICT_DISTRIBUTION_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "panpredict/errors.h"

namespace panpredict {

using Rng = std::mt19937_64;

// Tolerance for "sums to one" checks on probability vectors.
inline constexpr double kMassTolerance = 1e-12;

// Joint law over a finite context set: mass(x) = Pr(x), eta(x) = Pr(y=1 | x).
class FiniteDistribution {
 public:
  // Throws ValidationError if contexts repeat, masses are negative or do not
  // sum to one, or any eta leaves [0, 1].
  FiniteDistribution(std::vector<std::string> contexts,
                     std::vector<double> mass, std::vector<double> eta);

  std::size_t size() const { return mass_.size(); }
  const std::string& context(std::size_t x) const { return contexts_[x]; }
  const std::vector<std::string>& contexts() const { return contexts_; }
  double mass(std::size_t x) const { return mass_[x]; }
  double eta(std::size_t x) const { return eta_[x]; }
  std::span<const double> masses() const { return mass_; }
  std::span<const double> etas() const { return eta_; }

  friend bool operator==(const FiniteDistribution&,
                         const FiniteDistribution&) = default;

 private:
  std::vector<std::string> contexts_;
  std::vector<double> mass_;
  std::vector<double> eta_;
};

// Binary membership vector over contexts.
using Membership = std::vector<std::uint8_t>;

// Finite set of groups with their exact probabilities P_g under D.
class GroupFamily {
 public:
  // Throws ValidationError on size mismatch and DegenerateGroupError if
  // some group has zero mass.
  GroupFamily(const FiniteDistribution& d, std::vector<std::string> names,
              std::vector<Membership> members);

  // The single group G = {X}.
  static GroupFamily WholeDomain(const FiniteDistribution& d);

  std::size_t size() const { return members_.size(); }
  const std::string& name(std::size_t g) const { return names_[g]; }
  const Membership& members(std::size_t g) const { return members_[g]; }
  bool contains(std::size_t g, std::size_t x) const {
    return members_[g][x] != 0;
  }
  double mass(std::size_t g) const { return masses_[g]; }
  // gamma = min_g P_g.
  double gamma() const;

 private:
  std::vector<std::string> names_;
  std::vector<Membership> members_;
  std::vector<double> masses_;
};

// Sum of mass over the members of a group.
double GroupMass(const FiniteDistribution& d, std::span<const std::uint8_t> group);

// E[f(x, y) | g(x) = 1], evaluated exactly from the table of D.
// f is called as f(x, y) with y in {0, 1}. Throws DegenerateGroupError when
// the group has zero mass.
template <typename F>
double GroupConditionalExpectation(const FiniteDistribution& d,
                                   std::span<const std::uint8_t> group, F&& f) {
  double total = 0.0;
  double group_mass = 0.0;
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (!group[x]) continue;
    const double m = d.mass(x);
    if (m == 0.0) continue;
    const double eta = d.eta(x);
    group_mass += m;
    total += m * (eta * f(x, 1) + (1.0 - eta) * f(x, 0));
  }
  if (group_mass <= 0.0) {
    throw DegenerateGroupError("conditioning on a group of zero mass");
  }
  return total / group_mass;
}

struct LabeledPoint {
  std::size_t context;
  int label;
};

// Counts of (x, y) pairs in a sample. Every empirical average over a sample
// depends on it only through these counts.
class EmpiricalSample {
 public:
  explicit EmpiricalSample(std::size_t num_contexts)
      : ones_(num_contexts, 0), zeros_(num_contexts, 0) {}
  EmpiricalSample(std::span<const LabeledPoint> points, std::size_t num_contexts);

  void Add(std::size_t x, int y, std::uint64_t count = 1);
  std::uint64_t ones(std::size_t x) const { return ones_[x]; }
  std::uint64_t zeros(std::size_t x) const { return zeros_[x]; }
  std::uint64_t size() const { return size_; }
  std::size_t num_contexts() const { return ones_.size(); }

 private:
  std::vector<std::uint64_t> ones_;
  std::vector<std::uint64_t> zeros_;
  std::uint64_t size_ = 0;
};

// Draws iid labeled points from a FiniteDistribution.
class DistributionSampler {
 public:
  explicit DistributionSampler(const FiniteDistribution& d);

  LabeledPoint Draw(Rng& rng) const;
  // m iid draws summarized as counts (multinomial via conditional binomials).
  EmpiricalSample DrawMany(std::uint64_t m, Rng& rng) const;

 private:
  // Cells are ordered (x, y=0), (x, y=1), ...
  std::vector<double> cell_prob_;
  std::vector<double> cumulative_;
};

}  // namespace panpredict

#endif  // PANPREDICT_DISTRIBUTION_H_
