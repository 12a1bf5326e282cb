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

#include "panpredict/grid.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "panpredict/errors.h"

namespace panpredict {

PredictionGrid::PredictionGrid(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw DomainError("grid spacing must lie in (0, 1], got " +
                      std::to_string(lambda));
  }
  const double inverse = 1.0 / lambda;
  const double rounded = std::round(inverse);
  if (std::abs(inverse - rounded) < 1e-9) {
    // Exact reciprocal: i / n is the closest double to the grid point.
    const auto n = static_cast<std::size_t>(rounded);
    values_.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      values_.push_back(static_cast<double>(i) / static_cast<double>(n));
    }
  } else {
    const auto n = static_cast<std::size_t>(std::ceil(inverse));
    values_.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      values_.push_back(static_cast<double>(i) * lambda);
    }
    values_.push_back(1.0);
  }
}

GridIndex PredictionGrid::Quantize(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("cannot quantize " + std::to_string(p) +
                      ": outside [0, 1]");
  }
  auto it = std::lower_bound(values_.begin(), values_.end(), p);
  if (it == values_.begin()) return 0;
  if (it == values_.end()) return last();
  const auto hi = static_cast<GridIndex>(it - values_.begin());
  const double d_lo = p - values_[hi - 1];
  const double d_hi = values_[hi] - p;
  return d_hi < d_lo ? hi : hi - 1;
}

GridIndex PredictionGrid::IndexOf(double value) const {
  const GridIndex i = Quantize(std::clamp(value, 0.0, 1.0));
  if (std::abs(values_[i] - value) > 1e-9) {
    throw DomainError("value " + std::to_string(value) +
                      " is not a point of the grid");
  }
  return i;
}

}  // namespace panpredict
