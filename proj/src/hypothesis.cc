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

#include "panpredict/hypothesis.h"

#include "panpredict/errors.h"

namespace panpredict {

const char* HypothesisKindName(HypothesisKind kind) {
  return kind == HypothesisKind::kBinary ? "binary" : "real";
}

HypothesisKind ParseHypothesisKind(const std::string& name) {
  if (name == "binary") return HypothesisKind::kBinary;
  if (name == "real") return HypothesisKind::kReal;
  throw ValidationError("unknown hypothesis kind '" + name + "'");
}

HypothesisClass::HypothesisClass(
    const PredictionGrid& grid, std::size_t num_contexts,
    std::vector<std::string> names, std::vector<HypothesisKind> kinds,
    const std::vector<std::vector<double>>& raw_values)
    : names_(std::move(names)), kinds_(std::move(kinds)) {
  if (names_.size() != kinds_.size() || names_.size() != raw_values.size()) {
    throw ValidationError("hypothesis names, kinds and values differ in length");
  }
  values_.reserve(raw_values.size());
  for (std::size_t h = 0; h < raw_values.size(); ++h) {
    const auto& raw = raw_values[h];
    if (raw.size() != num_contexts) {
      throw ValidationError("hypothesis '" + names_[h] +
                            "' has the wrong number of entries");
    }
    std::vector<GridIndex> q;
    q.reserve(raw.size());
    bool binary = true;
    for (double v : raw) {
      if (kinds_[h] == HypothesisKind::kBinary) {
        if (v != 0.0 && v != 1.0) {
          throw ValidationError("binary hypothesis '" + names_[h] +
                                "' takes a value other than 0 or 1");
        }
        q.push_back(v == 0.0 ? 0 : grid.last());
      } else {
        if (!(v >= 0.0 && v <= 1.0)) {
          throw ValidationError("real hypothesis '" + names_[h] +
                                "' takes a value outside [0, 1]");
        }
        q.push_back(grid.Quantize(v));
      }
      binary = binary && (q.back() == 0 || q.back() == grid.last());
    }
    values_.push_back(std::move(q));
    binary_valued_.push_back(binary);
  }
}

}  // namespace panpredict
