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

#ifndef PANPREDICT_GRID_H_
#define PANPREDICT_GRID_H_

#include <cstdint>
#include <span>
#include <vector>

namespace panpredict {

// Position of a value in a PredictionGrid. Predictors and hypotheses store
// indices so that sublevel comparisons p(x) <= v are exact.
using GridIndex = std::uint32_t;

// The lambda-net {0, lambda, 2 lambda, ..., 1} of the unit interval. When
// 1/lambda is not an integer the final step is shorter than lambda.
class PredictionGrid {
 public:
  // Throws DomainError unless lambda is in (0, 1].
  explicit PredictionGrid(double lambda);

  double lambda() const { return lambda_; }
  std::size_t size() const { return values_.size(); }
  GridIndex last() const { return static_cast<GridIndex>(values_.size() - 1); }
  double value(GridIndex i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  // Nearest grid point; ties go to the smaller value. Throws DomainError for
  // p outside [0, 1].
  GridIndex Quantize(double p) const;
  double QuantizeValue(double p) const { return values_[Quantize(p)]; }

  // Index of a value that is already on the grid (within 1e-9). Throws
  // DomainError otherwise.
  GridIndex IndexOf(double value) const;

  friend bool operator==(const PredictionGrid& a, const PredictionGrid& b) {
    return a.values_ == b.values_;
  }

 private:
  double lambda_;
  std::vector<double> values_;
};

}  // namespace panpredict

#endif  // PANPREDICT_GRID_H_
