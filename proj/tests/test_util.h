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

// Hand-rolled random instances and brute-force reference computations that
// avoid the library's cover and bias-table code paths.

#ifndef PANPREDICT_TESTS_TEST_UTIL_H_
#define PANPREDICT_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "panpredict/instance.h"
#include "panpredict/predictor.h"

namespace panpredict::testing {

struct RandomInstanceOptions {
  std::size_t min_contexts = 1;
  std::size_t max_contexts = 12;
  std::size_t max_groups = 3;
  std::size_t max_hypotheses = 3;
  // Place eta on this grid; 0 leaves eta continuous.
  double eta_lambda = 0.1;
  bool allow_binary = true;
  bool allow_real = true;
};

inline Instance RandomInstance(std::mt19937_64& rng,
                               const RandomInstanceOptions& opt = {}) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(
      opt.min_contexts, opt.max_contexts)(rng);
  Instance inst;
  double total = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    inst.contexts.push_back("c" + std::to_string(x));
    inst.mass.push_back(0.05 + unit(rng));
    total += inst.mass.back();
    double eta = unit(rng);
    if (opt.eta_lambda > 0.0) {
      const double steps = std::round(1.0 / opt.eta_lambda);
      eta = std::round(eta * steps) / steps;
    }
    inst.eta.push_back(eta);
  }
  for (double& m : inst.mass) m /= total;
  // Renormalizing can leave the sum a few ulps off; push the residual into
  // the first entry.
  double sum = 0.0;
  for (double m : inst.mass) sum += m;
  inst.mass[0] += 1.0 - sum;

  const std::size_t groups =
      std::uniform_int_distribution<std::size_t>(1, opt.max_groups)(rng);
  for (std::size_t g = 0; g < groups; ++g) {
    GroupSpec gs{"g" + std::to_string(g), Membership(n, 0)};
    for (std::size_t x = 0; x < n; ++x) gs.members[x] = unit(rng) < 0.5;
    gs.members[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = 1;
    if (g == 0) gs.members.assign(n, 1);
    inst.groups.push_back(gs);
  }
  const std::size_t hyps =
      std::uniform_int_distribution<std::size_t>(1, opt.max_hypotheses)(rng);
  for (std::size_t h = 0; h < hyps; ++h) {
    HypothesisSpec hs;
    hs.name = "h" + std::to_string(h);
    bool binary = opt.allow_binary && (!opt.allow_real || unit(rng) < 0.5);
    hs.kind = binary ? HypothesisKind::kBinary : HypothesisKind::kReal;
    for (std::size_t x = 0; x < n; ++x) {
      hs.values.push_back(binary ? (unit(rng) < 0.5 ? 0.0 : 1.0) : unit(rng));
    }
    inst.hypotheses.push_back(hs);
  }
  inst.losses = StandardLossSpecs();
  return inst;
}

inline DeterministicPredictor RandomPredictor(std::mt19937_64& rng,
                                              const PredictionGrid& grid,
                                              std::size_t n) {
  std::uniform_int_distribution<GridIndex> pick(0, grid.last());
  std::vector<GridIndex> v(n);
  for (auto& e : v) e = pick(rng);
  return DeterministicPredictor(v);
}

inline RandomizedPredictor RandomMixture(std::mt19937_64& rng,
                                         const PredictionGrid& grid,
                                         std::size_t n, std::size_t k) {
  std::vector<DeterministicPredictor> comps;
  std::vector<double> w;
  double total = 0.0;
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  for (std::size_t i = 0; i < k; ++i) {
    comps.push_back(RandomPredictor(rng, grid, n));
    w.push_back(unit(rng));
    total += w.back();
  }
  for (double& e : w) e /= total;
  double sum = 0.0;
  for (double e : w) sum += e;
  w[0] += 1.0 - sum;
  return RandomizedPredictor(comps, w);
}

// Mixture as a list of (weight, per-context values) with grid values as
// doubles.
struct PlainMixture {
  std::vector<double> weights;
  std::vector<std::vector<double>> values;
};

inline PlainMixture Plain(const RandomizedPredictor& p, const PredictionGrid& grid) {
  PlainMixture out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.weights.push_back(p.weight(i));
    std::vector<double> v;
    for (GridIndex e : p.component(i).values()) v.push_back(grid.value(e));
    out.values.push_back(v);
  }
  return out;
}

inline PlainMixture Plain(const DeterministicPredictor& p, const PredictionGrid& grid) {
  return Plain(RandomizedPredictor({p}, {1.0}), grid);
}

// Quantized hypothesis values as doubles, recomputed by nearest-point scan.
inline std::vector<double> QuantizedByScan(const std::vector<double>& raw,
                                           const PredictionGrid& grid) {
  std::vector<double> out;
  for (double r : raw) {
    double best = grid.value(0);
    for (double g : grid.values()) {
      if (std::abs(g - r) < std::abs(best - r)) best = g;
    }
    out.push_back(best);
  }
  return out;
}

// Normalized step calibration error by direct enumeration of (g, h, w, v).
// With v_only_last, only v = 1 (multiaccuracy).
inline double BruteStepError(const Instance& inst, const PredictionGrid& grid,
                             const PlainMixture& p, bool v_only_last = false,
                             bool use_hypotheses = true) {
  const std::size_t n = inst.contexts.size();
  std::vector<std::vector<double>> hyps;
  if (use_hypotheses) {
    for (const auto& h : inst.hypotheses) hyps.push_back(QuantizedByScan(h.values, grid));
  }
  double worst = 0.0;
  for (const auto& g : inst.groups) {
    double pg = 0.0;
    for (std::size_t x = 0; x < n; ++x) pg += g.members[x] * inst.mass[x];
    auto check = [&](const std::vector<double>* h, double w) {
      for (double v : grid.values()) {
        if (v_only_last && v != 1.0) continue;
        double bias = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
          if (!g.members[x]) continue;
          if (h && (*h)[x] > w + 1e-12) continue;
          for (std::size_t i = 0; i < p.weights.size(); ++i) {
            const double px = p.values[i][x];
            if (px > v + 1e-12) continue;
            bias += p.weights[i] * inst.mass[x] * (inst.eta[x] - px);
          }
        }
        worst = std::max(worst, std::abs(bias / pg) * std::sqrt(pg));
      }
    };
    check(nullptr, 1.0);
    for (const auto& h : hyps) {
      for (double w : grid.values()) check(&h, w);
    }
  }
  return worst;
}

}  // namespace panpredict::testing

#endif  // PANPREDICT_TESTS_TEST_UTIL_H_
