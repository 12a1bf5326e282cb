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

#include "panpredict/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "panpredict/errors.h"

namespace panpredict {
namespace {

// Largest sample size we are willing to represent.
constexpr double kMaxSampleSize = 4.0e18;

std::uint64_t CeilToCount(double n, const char* what) {
  if (!std::isfinite(n) || n > kMaxSampleSize) {
    throw BudgetError(std::string(what) + " sample size is out of range");
  }
  return static_cast<std::uint64_t>(std::ceil(std::max(n, 1.0)));
}

void CheckArgs(std::size_t cover_size, std::uint64_t horizon, double delta,
               double tolerance) {
  if (cover_size == 0 || horizon == 0) {
    throw DomainError("oracle needs a nonempty cover and horizon");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  if (!(tolerance > 0.0)) throw DomainError("oracle tolerance must be positive");
}

}  // namespace

const char* OracleKindName(OracleKind kind) {
  switch (kind) {
    case OracleKind::kExact:
      return "exact";
    case OracleKind::kFreshSample:
      return "fresh-sample";
    case OracleKind::kExponentialMechanism:
      return "exponential-mechanism";
  }
  return "unknown";
}

OracleKind ParseOracleKind(const std::string& name) {
  if (name == "exact") return OracleKind::kExact;
  if (name == "fresh-sample") return OracleKind::kFreshSample;
  if (name == "exponential-mechanism") return OracleKind::kExponentialMechanism;
  throw ValidationError("unknown oracle '" + name + "'");
}

void SampleCounter::Charge(std::uint64_t n, const std::string& purpose) {
  if (n > std::numeric_limits<std::uint64_t>::max() - count_ ||
      (budget_ != 0 && count_ + n > budget_)) {
    throw BudgetError("sample budget of " + std::to_string(budget_) +
                      " exhausted by " + purpose + " (" + std::to_string(count_) +
                      " drawn, " + std::to_string(n) + " requested)");
  }
  count_ += n;
}

std::uint64_t FreshSampleSize(std::size_t cover_size, std::uint64_t horizon,
                              double delta, double tolerance) {
  CheckArgs(cover_size, horizon, delta, tolerance);
  const double k = static_cast<double>(cover_size);
  const double t = static_cast<double>(horizon);
  return CeilToCount(2.0 * std::log(6.0 * k * t / delta) / (tolerance * tolerance),
                     "fresh-sample");
}

std::uint64_t ExponentialMechanismSampleSize(std::size_t cover_size,
                                             std::uint64_t horizon,
                                             double delta, double tolerance) {
  CheckArgs(cover_size, horizon, delta, tolerance);
  const double k = static_cast<double>(cover_size);
  const double t = static_cast<double>(horizon);
  const double log_k = std::max(std::log(k / tolerance), 1.0);
  const double log_d = std::max(std::log(1.0 / (tolerance * delta)), 1.0);
  return CeilToCount(std::sqrt(t) * log_k * std::pow(log_d, 1.5) /
                         (tolerance * tolerance),
                     "exponential-mechanism");
}

double DefaultExponentialMechanismRate(std::size_t cover_size,
                                       std::uint64_t horizon, double delta,
                                       double tolerance) {
  CheckArgs(cover_size, horizon, delta, tolerance);
  return 2.0 *
         std::log(3.0 * static_cast<double>(horizon) *
                  static_cast<double>(cover_size) / delta) /
         tolerance;
}

BestResponseOracle::BestResponseOracle(const ObjectiveCover& cover,
                                       const FiniteDistribution& d,
                                       const OracleSettings& settings)
    : cover_(cover), d_(d), settings_(settings), sampler_(d) {
  switch (settings_.kind) {
    case OracleKind::kExact:
      break;
    case OracleKind::kFreshSample:
      sample_size_ = FreshSampleSize(cover.size(), settings_.horizon,
                                     settings_.delta, settings_.tolerance);
      break;
    case OracleKind::kExponentialMechanism:
      sample_size_ = ExponentialMechanismSampleSize(
          cover.size(), settings_.horizon, settings_.delta, settings_.tolerance);
      if (settings_.em_rate <= 0.0) {
        settings_.em_rate = DefaultExponentialMechanismRate(
            cover.size(), settings_.horizon, settings_.delta,
            settings_.tolerance);
      }
      break;
  }
}

OracleResponse BestResponseOracle::Respond(const DeterministicPredictor& p,
                                           Rng& rng, SampleCounter& counter) {
  switch (settings_.kind) {
    case OracleKind::kExact: {
      const BiasTable biases = cover_.Biases(PredictionLaw(p), d_);
      const std::size_t id = cover_.ArgMax(biases);
      return {id, cover_.Value(id, biases)};
    }
    case OracleKind::kFreshSample: {
      counter.Charge(sample_size_, "fresh-sample best response");
      const EmpiricalSample sample = sampler_.DrawMany(sample_size_, rng);
      const BiasTable biases = cover_.Biases(p, sample);
      const std::size_t id = cover_.ArgMax(biases);
      return {id, cover_.Value(id, biases)};
    }
    case OracleKind::kExponentialMechanism: {
      if (!shared_) {
        counter.Charge(sample_size_, "exponential-mechanism sample");
        shared_ = sampler_.DrawMany(sample_size_, rng);
      }
      const std::vector<double> values = cover_.Values(cover_.Biases(p, *shared_));
      const double top = *std::max_element(values.begin(), values.end());
      std::vector<double> weights(values.size());
      for (std::size_t i = 0; i < values.size(); ++i) {
        weights[i] = std::exp(settings_.em_rate * (values[i] - top));
      }
      std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
      const std::size_t id = pick(rng);
      return {id, values[id]};
    }
  }
  throw DomainError("unknown oracle kind");
}

}  // namespace panpredict
