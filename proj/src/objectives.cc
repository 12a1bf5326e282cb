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

#include <cmath>
#include <map>
#include <sstream>

#include "panpredict/errors.h"

namespace panpredict {
namespace {

void CheckTheta(const ObjectiveParams& theta, const PredictionGrid& grid,
                const GroupFamily& groups, const HypothesisClass& hypotheses) {
  if (theta.sigma != 1 && theta.sigma != -1) {
    throw ValidationError("objective sigma must be +1 or -1");
  }
  if (theta.v > grid.last() || theta.w > grid.last()) {
    throw ValidationError("objective threshold off the grid");
  }
  if (theta.g >= groups.size()) throw ValidationError("objective group out of range");
  if (theta.h < kEmptyHypothesis ||
      theta.h >= static_cast<int>(hypotheses.size())) {
    throw ValidationError("objective hypothesis out of range");
  }
}

bool SliceContains(const ObjectiveParams& theta, const HypothesisClass& hypotheses,
                   std::size_t x) {
  return theta.h == kEmptyHypothesis ||
         hypotheses.value(static_cast<std::size_t>(theta.h), x) <= theta.w;
}

double Scale(const GroupFamily& groups, std::size_t g) {
  return std::sqrt(groups.gamma() / groups.mass(g));
}

// Unconditioned E[(y - p(x)) 1[p(x) <= v] f(x) 1[g(x) = 1]] over the empirical
// law of a sample.
double EmpiricalBias(const ObjectiveParams& theta, const DeterministicPredictor& p,
                     const PredictionGrid& grid, const EmpiricalSample& sample,
                     const GroupFamily& groups, const HypothesisClass& hypotheses) {
  if (sample.size() == 0) throw DomainError("empirical objective on an empty sample");
  double total = 0.0;
  for (std::size_t x = 0; x < sample.num_contexts(); ++x) {
    if (!groups.contains(theta.g, x) || p[x] > theta.v ||
        !SliceContains(theta, hypotheses, x)) {
      continue;
    }
    const double pv = grid.value(p[x]);
    total += static_cast<double>(sample.ones(x)) * (1.0 - pv) -
             static_cast<double>(sample.zeros(x)) * pv;
  }
  return total / static_cast<double>(sample.size());
}

}  // namespace

Membership SliceFunction(const HypothesisClass& hypotheses,
                         std::size_t num_contexts, int h, GridIndex w) {
  Membership f(num_contexts, 1);
  if (h == kEmptyHypothesis) return f;
  for (std::size_t x = 0; x < num_contexts; ++x) {
    f[x] = hypotheses.value(static_cast<std::size_t>(h), x) <= w ? 1 : 0;
  }
  return f;
}

double RawBias(const ObjectiveParams& theta, const PredictionLaw& p,
               const PredictionGrid& grid, const FiniteDistribution& d,
               const GroupFamily& groups, const HypothesisClass& hypotheses) {
  CheckTheta(theta, grid, groups, hypotheses);
  return GroupConditionalExpectation(
      d, groups.members(theta.g), [&](std::size_t x, int y) {
        if (!SliceContains(theta, hypotheses, x)) return 0.0;
        double out = 0.0;
        for (const auto& atom : p.at(x)) {
          if (atom.value > theta.v) continue;
          out += atom.prob * (y - grid.value(atom.value));
        }
        return out;
      });
}

double RawBias(const ObjectiveParams& theta, const DeterministicPredictor& p,
               const PredictionGrid& grid, const FiniteDistribution& d,
               const GroupFamily& groups, const HypothesisClass& hypotheses) {
  return RawBias(theta, PredictionLaw(p), grid, d, groups, hypotheses);
}

double PointwiseObjective(const ObjectiveParams& theta,
                          const PredictionGrid& grid, GridIndex prediction,
                          std::size_t x, int y, const GroupFamily& groups,
                          const HypothesisClass& hypotheses) {
  if (!groups.contains(theta.g, x) || prediction > theta.v ||
      !SliceContains(theta, hypotheses, x)) {
    return 0.5;
  }
  return 0.5 * (1.0 + Scale(groups, theta.g) * theta.sigma *
                          (y - grid.value(prediction)));
}

double EvalRescaled(const ObjectiveParams& theta, const DeterministicPredictor& p,
                    const PredictionGrid& grid, const FiniteDistribution& d,
                    const GroupFamily& groups, const HypothesisClass& hypotheses) {
  CheckTheta(theta, grid, groups, hypotheses);
  double total = 0.0;
  for (std::size_t x = 0; x < d.size(); ++x) {
    const double eta = d.eta(x);
    total += d.mass(x) *
             (eta * PointwiseObjective(theta, grid, p[x], x, 1, groups, hypotheses) +
              (1.0 - eta) *
                  PointwiseObjective(theta, grid, p[x], x, 0, groups, hypotheses));
  }
  return total;
}

double EvalRescaledEmpirical(const ObjectiveParams& theta,
                             const DeterministicPredictor& p,
                             const PredictionGrid& grid,
                             std::span<const LabeledPoint> sample,
                             const GroupFamily& groups,
                             const HypothesisClass& hypotheses) {
  if (sample.empty()) throw DomainError("empirical objective on an empty sample");
  CheckTheta(theta, grid, groups, hypotheses);
  double total = 0.0;
  for (const auto& pt : sample) {
    total += PointwiseObjective(theta, grid, p[pt.context], pt.context, pt.label,
                                groups, hypotheses);
  }
  return total / static_cast<double>(sample.size());
}

double EvalRescaledEmpirical(const ObjectiveParams& theta,
                             const DeterministicPredictor& p,
                             const PredictionGrid& grid,
                             const EmpiricalSample& sample,
                             const GroupFamily& groups,
                             const HypothesisClass& hypotheses) {
  CheckTheta(theta, grid, groups, hypotheses);
  const double bias = EmpiricalBias(theta, p, grid, sample, groups, hypotheses);
  return 0.5 + 0.5 * theta.sigma * Scale(groups, theta.g) * bias;
}

ObjectiveCover::ObjectiveCover(const PredictionGrid& grid,
                               const GroupFamily& groups,
                               const HypothesisClass& hypotheses)
    : grid_(grid),
      grid_size_(grid.size()),
      num_groups_(groups.size()),
      num_contexts_(0),
      pre_dedup_size_(0),
      gamma_(0.0) {
  if (groups.size() == 0) throw ValidationError("objective cover needs a group");
  num_contexts_ = groups.members(0).size();
  gamma_ = groups.gamma();
  for (std::size_t g = 0; g < num_groups_; ++g) {
    group_members_.push_back(groups.members(g));
    group_mass_.push_back(groups.mass(g));
    scale_.push_back(std::sqrt(gamma_ / groups.mass(g)));
  }
  const std::uint64_t v_count = grid_size_;
  pre_dedup_size_ =
      hypotheses.empty()
          ? 2 * v_count * num_groups_
          : 2 * v_count * v_count * hypotheses.size() * num_groups_;

  std::map<Membership, std::size_t> seen;
  auto add = [&](int h, GridIndex w) {
    Membership f = SliceFunction(hypotheses, num_contexts_, h, w);
    auto [it, inserted] = seen.emplace(f, functions_.size());
    if (inserted) {
      functions_.push_back(std::move(f));
      function_h_.push_back(h);
      function_w_.push_back(w);
    }
    return it->second;
  };
  add(kEmptyHypothesis, grid.last());
  function_of_.resize(hypotheses.size());
  for (std::size_t h = 0; h < hypotheses.size(); ++h) {
    for (GridIndex w = 0; w <= grid.last(); ++w) {
      function_of_[h].push_back(add(static_cast<int>(h), w));
    }
  }
}

std::size_t ObjectiveCover::FunctionOf(int h, GridIndex w) const {
  if (h == kEmptyHypothesis) return 0;
  return function_of_.at(static_cast<std::size_t>(h)).at(w);
}

ObjectiveCover::Coordinates ObjectiveCover::Decode(std::size_t id) const {
  Coordinates c;
  c.v = static_cast<GridIndex>(id % grid_size_);
  id /= grid_size_;
  c.f = id % functions_.size();
  id /= functions_.size();
  c.g = id % num_groups_;
  id /= num_groups_;
  c.sigma = id == 0 ? 1 : -1;
  return c;
}

std::size_t ObjectiveCover::Encode(int sigma, std::size_t g, std::size_t f,
                                   GridIndex v) const {
  const std::size_t s = sigma > 0 ? 0 : 1;
  return ((s * num_groups_ + g) * functions_.size() + f) * grid_size_ + v;
}

ObjectiveParams ObjectiveCover::params(std::size_t id) const {
  const Coordinates c = Decode(id);
  ObjectiveParams theta;
  theta.sigma = c.sigma;
  theta.v = c.v;
  theta.w = function_w_[c.f];
  theta.h = function_h_[c.f];
  theta.g = c.g;
  return theta;
}

BiasTable ObjectiveCover::Biases(const PredictionLaw& p,
                                 const FiniteDistribution& d) const {
  BiasTable table(num_groups_, functions_.size(), grid_size_);
  // Per-context residual mass bucketed at each atom's prediction.
  std::vector<std::vector<std::pair<GridIndex, double>>> residual(num_contexts_);
  for (std::size_t x = 0; x < num_contexts_; ++x) {
    for (const auto& atom : p.at(x)) {
      residual[x].emplace_back(
          atom.value, d.mass(x) * atom.prob * (d.eta(x) - grid_.value(atom.value)));
    }
  }
  for (std::size_t g = 0; g < num_groups_; ++g) {
    for (std::size_t f = 0; f < functions_.size(); ++f) {
      for (std::size_t x = 0; x < num_contexts_; ++x) {
        if (!group_members_[g][x] || !functions_[f][x]) continue;
        for (const auto& [v, r] : residual[x]) table.at(g, f, v) += r;
      }
      for (GridIndex v = 1; v < grid_size_; ++v) {
        table.at(g, f, v) += table.at(g, f, v - 1);
      }
    }
  }
  return table;
}

BiasTable ObjectiveCover::Biases(const DeterministicPredictor& p,
                                 const EmpiricalSample& sample) const {
  if (sample.size() == 0) throw DomainError("empirical objective on an empty sample");
  BiasTable table(num_groups_, functions_.size(), grid_size_);
  const double n = static_cast<double>(sample.size());
  std::vector<double> residual(num_contexts_);
  for (std::size_t x = 0; x < num_contexts_; ++x) {
    const double pv = grid_.value(p[x]);
    residual[x] = (static_cast<double>(sample.ones(x)) * (1.0 - pv) -
                   static_cast<double>(sample.zeros(x)) * pv) /
                  n;
  }
  for (std::size_t g = 0; g < num_groups_; ++g) {
    for (std::size_t f = 0; f < functions_.size(); ++f) {
      for (std::size_t x = 0; x < num_contexts_; ++x) {
        if (group_members_[g][x] && functions_[f][x]) {
          table.at(g, f, p[x]) += residual[x];
        }
      }
      for (GridIndex v = 1; v < grid_size_; ++v) {
        table.at(g, f, v) += table.at(g, f, v - 1);
      }
    }
  }
  return table;
}

double ObjectiveCover::Value(std::size_t id, const BiasTable& biases) const {
  const Coordinates c = Decode(id);
  return 0.5 + 0.5 * c.sigma * scale_[c.g] * biases.at(c.g, c.f, c.v);
}

std::vector<double> ObjectiveCover::Values(const BiasTable& biases) const {
  std::vector<double> out(size());
  for (std::size_t id = 0; id < out.size(); ++id) out[id] = Value(id, biases);
  return out;
}

std::size_t ObjectiveCover::ArgMax(const BiasTable& biases) const {
  std::size_t best = 0;
  double best_value = Value(0, biases);
  for (std::size_t id = 1; id < size(); ++id) {
    const double v = Value(id, biases);
    if (v > best_value) {
      best = id;
      best_value = v;
    }
  }
  return best;
}

bool ObjectiveCover::Active(std::size_t id, std::size_t x, GridIndex p) const {
  const Coordinates c = Decode(id);
  return group_members_[c.g][x] && functions_[c.f][x] && p <= c.v;
}

double ObjectiveCover::Pointwise(std::size_t id, std::size_t x, int y,
                                 GridIndex p) const {
  if (!Active(id, x, p)) return 0.5;
  const Coordinates c = Decode(id);
  return 0.5 * (1.0 + c.sigma * scale_[c.g] * (y - grid_.value(p)));
}

std::string ObjectiveCover::DumpCsv(const BiasTable& biases,
                                    const HypothesisClass& hypotheses,
                                    const GroupFamily& groups) const {
  std::ostringstream out;
  out.precision(17);
  out << "sigma,v,w_or_fid,h,g,value\n";
  for (std::size_t id = 0; id < size(); ++id) {
    const Coordinates c = Decode(id);
    const int h = function_h_[c.f];
    out << c.sigma << ',' << grid_.value(c.v) << ','
        << grid_.value(function_w_[c.f]) << ','
        << (h == kEmptyHypothesis ? std::string("-")
                                  : hypotheses.name(static_cast<std::size_t>(h)))
        << ',' << groups.name(c.g) << ',' << Value(id, biases) << '\n';
  }
  return out.str();
}

ObjectiveCover BuildCover(const PredictionGrid& grid, const GroupFamily& groups,
                          const HypothesisClass& hypotheses) {
  if (hypotheses.empty()) {
    throw ValidationError("objective cover needs at least one hypothesis");
  }
  return ObjectiveCover(grid, groups, hypotheses);
}

}  // namespace panpredict
