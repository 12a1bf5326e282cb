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

#ifndef PANPREDICT_ENGINE_H_
#define PANPREDICT_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "panpredict/instance.h"
#include "panpredict/objectives.h"
#include "panpredict/oracle.h"
#include "panpredict/predictor.h"

namespace panpredict {

// How the deterministic run picks its output iterate t*.
enum class SelectionMode { kFreshSample, kExact };

const char* SelectionModeName(SelectionMode mode);
SelectionMode ParseSelectionMode(const std::string& name);

struct RunConfig {
  double epsilon = 0.1;
  double delta = 0.1;
  // Grid spacing; 0 means lambda = epsilon.
  double lambda = 0.0;
  // Number of rounds; 0 picks the algorithm's default.
  std::uint64_t T = 0;
  // Best-response tolerance is c epsilon sqrt(gamma).
  double c = 0.125;
  // Selection sample size is ceil(C ln(T / delta) / epsilon^2).
  double C = 8.0;
  OracleKind oracle = OracleKind::kFreshSample;
  SelectionMode selection = SelectionMode::kFreshSample;
  // Exponential-mechanism rate; 0 picks the oracle default.
  double em_rate = 0.0;
  // Hard cap on samples drawn from D; 0 means unlimited.
  std::uint64_t sample_budget = 0;
  std::uint64_t seed = 1;
  // Keep a full predictor snapshot every this many rounds; 0 keeps none
  // besides the selected iterate.
  std::uint64_t snapshot_stride = 0;

  // Throws ValidationError unless epsilon, delta are in (0, 1), c in (0, 1],
  // C > 0, and lambda in [0, 1].
  void Validate() const;
  double grid_lambda() const { return lambda > 0.0 ? lambda : epsilon; }
};

// ceil(8 / (epsilon^2 gamma)).
std::uint64_t DefaultDeterministicHorizon(double epsilon, double gamma);
// ceil(8 ln(k) / (epsilon^2 gamma)) for a cover of size k.
std::uint64_t DefaultRandomizedHorizon(double epsilon, double gamma,
                                       std::size_t cover_size);

struct TraceRecord {
  std::uint64_t t = 0;  // 1-based round
  std::size_t objective = 0;  // cover id of the round's objective
  ObjectiveParams theta;
  // Deterministic runs: the oracle's estimate of the objective. Randomized
  // runs: the pointwise objective at the sampled datum.
  double estimate = 0.0;
  // Exact E[l^(t)(p^(t), (x, y))].
  double value = 0.0;
  // max over the cover of the exact value, minus 1/2. Exact-oracle runs only.
  double gap = std::numeric_limits<double>::quiet_NaN();
  // Sampled datum, randomized runs only.
  long context = -1;
  int label = -1;
  std::uint64_t snapshot_hash = 0;
  // Cumulative samples drawn after this round.
  std::uint64_t samples = 0;
};

struct RunTrace {
  std::string algorithm;  // "det" or "rand"
  std::uint64_t horizon = 0;
  std::size_t cover_size = 0;
  std::uint64_t cover_pre_dedup_size = 0;
  double gamma = 0.0;
  std::vector<TraceRecord> records;
  // Selected round (1-based); 0 for randomized runs.
  std::uint64_t t_star = 0;
  std::uint64_t samples = 0;
  std::uint64_t oracle_samples = 0;
  std::uint64_t selection_samples = 0;
  std::vector<std::pair<std::uint64_t, DeterministicPredictor>> snapshots;
};

struct DeterministicRun {
  DeterministicPredictor predictor;
  RunTrace trace;
};

struct RandomizedRun {
  RandomizedPredictor predictor;
  RunTrace trace;
};

// Learner's linearized cost at x for action a under objective `id`:
// 1/2 (1 - sqrt(gamma/P_g) sigma a 1[p(x) <= v] f(x) 1[g(x) = 1]).
double HedgePointCost(const ObjectiveCover& cover, std::size_t id, std::size_t x,
                      GridIndex prediction, int action);

// Hedge against a best-response oracle; returns p^(t*).
DeterministicRun RunDeterministic(const Problem& problem, const RunConfig& config);
// Hedge against Hedge; returns the uniform mixture of p^(1..T).
RandomizedRun RunRandomized(const Problem& problem, const RunConfig& config);

// One JSON object per round.
std::string TraceToJsonl(const RunTrace& trace, const Problem& problem);

}  // namespace panpredict

#endif  // PANPREDICT_ENGINE_H_
