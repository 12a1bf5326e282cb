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

#ifndef PANPREDICT_REPORT_IO_H_
#define PANPREDICT_REPORT_IO_H_

#include <string>
#include <string_view>

#include "panpredict/diagnostics.h"
#include "panpredict/instance.h"
#include "panpredict/predictor.h"

namespace panpredict {

inline constexpr int kPredictorSchemaVersion = 1;

// A predictor file's contents: a mixture, which has a single component of
// weight one when the file holds a deterministic predictor.
struct LoadedPredictor {
  bool randomized = false;
  RandomizedPredictor mixture;
};

// JSON mapping context id -> prediction value, with the grid spacing.
std::string SerializePredictor(const DeterministicPredictor& p,
                               const Problem& problem);
// JSON list of weighted components. Identical components are merged first.
std::string SerializePredictor(const RandomizedPredictor& p,
                               const Problem& problem);
// Checks the grid spacing against the problem and every value against the
// grid. Throws ValidationError.
LoadedPredictor ParsePredictor(std::string_view text, const Problem& problem);

// Columns g,h,w,v,raw_bias,normalized; h is empty for the empty slice.
std::string ErrorReportCsv(const ErrorReport& report, const Setting& s);
// Columns loss,g,risk,best_h,best_risk,regret,normalized.
std::string RegretReportCsv(const RegretReport& report, const Setting& s);

}  // namespace panpredict

#endif  // PANPREDICT_REPORT_IO_H_
