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

#ifndef PANPREDICT_BASIS_H_
#define PANPREDICT_BASIS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "panpredict/grid.h"

namespace panpredict {

// Th_v(p) = 2 1[p <= v] - 1[p <= 1], over grid indices. Th at the last grid
// point is the constant 1.
inline double ThresholdFunction(GridIndex v, GridIndex p) {
  return p <= v ? 1.0 : -1.0;
}

// A sparse combination sum_j c_j Th_{v_j} of threshold functions on a grid.
struct ThresholdBasis {
  std::vector<GridIndex> thresholds;
  std::vector<double> coefficients;

  std::size_t sparsity() const { return thresholds.size(); }
  double coefficient_norm() const;
  double Evaluate(GridIndex p) const;
};

// Staircase approximation of a function tabulated on the grid points.
// Greedily splits the grid into maximal runs of range <= 2 tol and puts each
// run at its midpoint level, so the sup error is at most tol. Zero
// coefficients are dropped. Throws DomainError if tol <= 0 or the total
// variation exceeds 2 (the input should come from a normalized loss).
ThresholdBasis DecomposeThresholdBasis(std::span<const double> values, double tol);

// max_p |basis(p) - values(p)| over the grid.
double BasisSupError(const ThresholdBasis& basis, std::span<const double> values);

// ceil(2 / tol) + 1.
std::size_t BasisSparsityBound(double tol);

}  // namespace panpredict

#endif  // PANPREDICT_BASIS_H_
