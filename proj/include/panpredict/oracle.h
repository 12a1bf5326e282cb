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

#ifndef PANPREDICT_ORACLE_H_
#define PANPREDICT_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "panpredict/distribution.h"
#include "panpredict/objectives.h"
#include "panpredict/predictor.h"

namespace panpredict {

enum class OracleKind { kExact, kFreshSample, kExponentialMechanism };

const char* OracleKindName(OracleKind kind);
// Accepts exact, fresh-sample, exponential-mechanism.
OracleKind ParseOracleKind(const std::string& name);

// Running count of samples drawn from D, with an optional hard budget.
class SampleCounter {
 public:
  // budget == 0 means unlimited.
  explicit SampleCounter(std::uint64_t budget = 0) : budget_(budget) {}
  // Records n more draws. Throws BudgetError, before anything is drawn, if
  // the budget would be exceeded.
  void Charge(std::uint64_t n, const std::string& purpose);
  std::uint64_t count() const { return count_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
  std::uint64_t count_ = 0;
};

struct OracleSettings {
  OracleKind kind = OracleKind::kFreshSample;
  // Target suboptimality of each response, on the rescaled [0, 1] scale.
  double tolerance = 0.01;
  double delta = 0.1;
  // Number of rounds the oracle will be queried in.
  std::uint64_t horizon = 1;
  // Exponential-mechanism rate; 0 picks the default 2 ln(3 T k / delta) / tol.
  double em_rate = 0.0;
};

// ceil(2 ln(6 k T / delta) / tol^2): Hoeffding plus a union bound over k
// objectives makes each response tol-best with probability 1 - delta/(3T).
std::uint64_t FreshSampleSize(std::size_t cover_size, std::uint64_t horizon,
                              double delta, double tolerance);
// ceil(sqrt(T) ln(k / tol) ln(1 / (tol delta))^1.5 / tol^2), drawn once and
// reused across rounds.
std::uint64_t ExponentialMechanismSampleSize(std::size_t cover_size,
                                             std::uint64_t horizon,
                                             double delta, double tolerance);
double DefaultExponentialMechanismRate(std::size_t cover_size,
                                       std::uint64_t horizon, double delta,
                                       double tolerance);

struct OracleResponse {
  std::size_t id;
  // The oracle's own estimate of the objective value (exact in exact mode).
  double estimate;
};

// Returns a near-maximizing objective of the cover against a predictor.
class BestResponseOracle {
 public:
  // The cover and distribution must outlive the oracle.
  BestResponseOracle(const ObjectiveCover& cover, const FiniteDistribution& d,
                     const OracleSettings& settings);

  OracleResponse Respond(const DeterministicPredictor& p, Rng& rng,
                         SampleCounter& counter);

  const OracleSettings& settings() const { return settings_; }
  // Draws per query (fresh-sample) or for the shared sample (exponential
  // mechanism); 0 for the exact oracle.
  std::uint64_t sample_size() const { return sample_size_; }

 private:
  const ObjectiveCover& cover_;
  const FiniteDistribution& d_;
  OracleSettings settings_;
  DistributionSampler sampler_;
  std::uint64_t sample_size_ = 0;
  std::optional<EmpiricalSample> shared_;
};

}  // namespace panpredict

#endif  // PANPREDICT_ORACLE_H_
