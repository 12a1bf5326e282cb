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

#ifndef PANPREDICT_HYPOTHESIS_H_
#define PANPREDICT_HYPOTHESIS_H_

#include <span>
#include <string>
#include <vector>

#include "panpredict/grid.h"

namespace panpredict {

enum class HypothesisKind { kBinary, kReal };

const char* HypothesisKindName(HypothesisKind kind);
// Accepts "binary" or "real"; throws ValidationError otherwise.
HypothesisKind ParseHypothesisKind(const std::string& name);

// Finite competitor class H, stored as per-context grid indices. Real-valued
// hypotheses are quantized to the grid on construction; binary hypotheses
// map 0 and 1 to the grid endpoints.
class HypothesisClass {
 public:
  HypothesisClass() = default;
  // Throws ValidationError on length mismatch, binary hypotheses with values
  // other than 0 or 1, or real values outside [0, 1].
  HypothesisClass(const PredictionGrid& grid, std::size_t num_contexts,
                  std::vector<std::string> names,
                  std::vector<HypothesisKind> kinds,
                  const std::vector<std::vector<double>>& raw_values);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const std::string& name(std::size_t h) const { return names_[h]; }
  HypothesisKind kind(std::size_t h) const { return kinds_[h]; }
  std::span<const GridIndex> values(std::size_t h) const { return values_[h]; }
  GridIndex value(std::size_t h, std::size_t x) const { return values_[h][x]; }
  // True if every prediction is 0 or 1 after quantization, which makes the
  // hypothesis a valid competitor under losses with binary action space.
  bool binary_valued(std::size_t h) const { return binary_valued_[h]; }

 private:
  std::vector<std::string> names_;
  std::vector<HypothesisKind> kinds_;
  std::vector<std::vector<GridIndex>> values_;
  std::vector<bool> binary_valued_;
};

}  // namespace panpredict

#endif  // PANPREDICT_HYPOTHESIS_H_
