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

#include "panpredict/basis.h"

#include <algorithm>
#include <cmath>

#include "panpredict/errors.h"
#include "panpredict/loss.h"

namespace panpredict {
namespace {

// Slack on the variation check for values computed in floating point.
constexpr double kVariationSlack = 1e-9;

}  // namespace

double ThresholdBasis::coefficient_norm() const {
  double total = 0.0;
  for (double c : coefficients) total += std::abs(c);
  return total;
}

double ThresholdBasis::Evaluate(GridIndex p) const {
  double out = 0.0;
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    out += coefficients[j] * ThresholdFunction(thresholds[j], p);
  }
  return out;
}

ThresholdBasis DecomposeThresholdBasis(std::span<const double> values, double tol) {
  if (!(tol > 0.0)) throw DomainError("basis tolerance must be positive");
  if (values.empty()) throw DomainError("basis decomposition of an empty table");
  if (TotalVariation(values) > 2.0 + kVariationSlack) {
    throw DomainError("total variation exceeds 2; normalize the loss first");
  }
  // levels[k] is the midpoint of run k; ends[k] its last grid index.
  std::vector<double> levels;
  std::vector<GridIndex> ends;
  double lo = values[0];
  double hi = values[0];
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double nlo = std::min(lo, values[i]);
    const double nhi = std::max(hi, values[i]);
    if (nhi - nlo <= 2.0 * tol) {
      lo = nlo;
      hi = nhi;
      continue;
    }
    levels.push_back(0.5 * (lo + hi));
    ends.push_back(static_cast<GridIndex>(i - 1));
    lo = hi = values[i];
  }
  levels.push_back(0.5 * (lo + hi));
  ends.push_back(static_cast<GridIndex>(values.size() - 1));

  ThresholdBasis basis;
  const double c0 = 0.5 * (levels.front() + levels.back());
  if (c0 != 0.0) {
    basis.thresholds.push_back(ends.back());
    basis.coefficients.push_back(c0);
  }
  for (std::size_t k = 1; k < levels.size(); ++k) {
    const double c = 0.5 * (levels[k - 1] - levels[k]);
    if (c == 0.0) continue;
    basis.thresholds.push_back(ends[k - 1]);
    basis.coefficients.push_back(c);
  }
  return basis;
}

double BasisSupError(const ThresholdBasis& basis, std::span<const double> values) {
  double worst = 0.0;
  for (std::size_t p = 0; p < values.size(); ++p) {
    worst = std::max(worst,
                     std::abs(basis.Evaluate(static_cast<GridIndex>(p)) - values[p]));
  }
  return worst;
}

std::size_t BasisSparsityBound(double tol) {
  return static_cast<std::size_t>(std::ceil(2.0 / tol - 1e-12)) + 1;
}

}  // namespace panpredict
