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

#ifndef PANPREDICT_DIAGNOSTICS_H_
#define PANPREDICT_DIAGNOSTICS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "panpredict/distribution.h"
#include "panpredict/grid.h"
#include "panpredict/hypothesis.h"
#include "panpredict/instance.h"
#include "panpredict/loss.h"
#include "panpredict/objectives.h"
#include "panpredict/predictor.h"

namespace panpredict {

// Default basis tolerance for the indistinguishability bounds.
inline constexpr double kDefaultBasisTolerance = 0.01;

// Read-only views of the pieces every diagnostic needs.
struct Setting {
  const PredictionGrid& grid;
  const FiniteDistribution& distribution;
  const GroupFamily& groups;
  const HypothesisClass& hypotheses;

  static Setting Of(const Problem& problem) {
    return {problem.grid(), problem.distribution(), problem.groups(),
            problem.hypotheses()};
  }
};

struct ErrorRow {
  GridIndex v = 0;
  GridIndex w = 0;
  int h = kEmptyHypothesis;
  std::size_t g = 0;
  // E[(y - p(x)) 1[p(x) <= v, h(x) <= w] | g(x) = 1].
  double raw_bias = 0.0;
  // |raw_bias| sqrt(P_g).
  double normalized = 0.0;
};

struct ErrorReport {
  // One row per (g, h, w, v); the empty slice has a single w (the last).
  std::vector<ErrorRow> rows;
  std::vector<double> group_max;
  double max = 0.0;
  ErrorRow witness;
};

// sup over v, w, h in H and the empty slice, and g of the normalized
// sublevel bias. Randomized predictors average the bias over components
// before taking absolute values.
ErrorReport StepCalibrationError(const PredictionLaw& p, const Setting& s);
// The v = 1 slice of the above.
ErrorReport MultiaccuracyError(const PredictionLaw& p, const Setting& s);

// E[l(k_l(p(x)), y) | g(x) = 1].
double PostProcessedRisk(const PredictionLaw& p, const LossTable& loss,
                         const Setting& s, std::size_t g);
// E[l(h(x), y) | g(x) = 1]. Throws DomainError if h is not an admissible
// action sequence for the loss.
double HypothesisRisk(std::size_t h, const LossTable& loss, const Setting& s,
                      std::size_t g);
// Whether every value of h is an action of the loss.
bool IsComparator(std::size_t h, const LossTable& loss, const Setting& s);

struct BestHypothesis {
  int h = -1;  // -1 when H has no admissible comparator
  double risk = 0.0;
};
// Smallest risk over admissible hypotheses; ties go to the lowest index.
BestHypothesis BestInClass(const LossTable& loss, const Setting& s, std::size_t g);

// Post-processed risk minus the best-in-class risk. NaN when H has no
// admissible comparator for the loss.
double PanRegret(const PredictionLaw& p, const LossTable& loss, const Setting& s,
                 std::size_t g);

struct RegretRow {
  std::string loss;
  std::size_t g = 0;
  double risk = 0.0;
  double best_risk = 0.0;
  int best_h = -1;
  double regret = 0.0;
  // regret sqrt(P_g).
  double normalized = 0.0;
};

struct RegretReport {
  // Rows for (loss, g) pairs that have a comparator.
  std::vector<RegretRow> rows;
  double max_normalized = 0.0;
};

RegretReport PanRegretReport(const PredictionLaw& p,
                             const std::vector<LossTable>& losses,
                             const Setting& s);
// pan_regret with G = {X}.
RegretReport OmnipredictionReport(const PredictionLaw& p,
                                  const std::vector<LossTable>& losses,
                                  const PredictionGrid& grid,
                                  const FiniteDistribution& d,
                                  const HypothesisClass& hypotheses);

// |E[(y - p(x)) Delta l(k_l(p(x))) | g(x) = 1]|.
double DecisionOiGap(const PredictionLaw& p, const LossTable& loss,
                     const Setting& s, std::size_t g);
// |E[(y - p(x)) Delta l(h(x)) | g(x) = 1]|.
double HypothesisOiGap(const PredictionLaw& p, const LossTable& loss,
                       std::size_t h, const Setting& s, std::size_t g);

// sup_v |E[(y - p(x)) 1[p(x) <= v] | g(x) = 1]|.
double MarginalStepSup(const PredictionLaw& p, const Setting& s, std::size_t g);
// sup_w |E[(y - p(x)) 1[h(x) <= w] | g(x) = 1]|.
double HypothesisSublevelSup(const PredictionLaw& p, std::size_t h,
                             const Setting& s, std::size_t g);

// 9 sup + tau / sqrt(P_g): the approximation bound for the two gaps.
double DecisionOiBound(const PredictionLaw& p, const Setting& s, std::size_t g,
                       double tau = kDefaultBasisTolerance);
double HypothesisOiBound(const PredictionLaw& p, std::size_t h, const Setting& s,
                         std::size_t g, double tau = kDefaultBasisTolerance);

// 18 stepcal + 2 tau, the bound on normalized pan regret.
inline double ReductionChainBound(double normalized_step_error,
                                  double tau = kDefaultBasisTolerance) {
  return 18.0 * normalized_step_error + 2.0 * tau;
}

// h(x) = 1[p(x) >= 1/2], as a predictor on the grid endpoints.
DeterministicPredictor MultigroupExtract(const DeterministicPredictor& p,
                                         const PredictionGrid& grid);
// Component-wise extraction of a mixture.
RandomizedPredictor MultigroupExtract(const RandomizedPredictor& p,
                                      const PredictionGrid& grid);

// Zero-one risk of a (possibly randomized) binary classifier on g, minus the
// best zero-one risk over the binary-valued hypotheses. Computed from label
// disagreements, without post-processing.
double ClassifierGroupRegret(const PredictionLaw& classifier, const Setting& s,
                             std::size_t g);

// Two contexts with deterministic opposite labels, H = {h, h'} where h
// matches the labels and h' = 1 - h, and G = {X}.
Instance CounterexampleInstance();

}  // namespace panpredict

#endif  // PANPREDICT_DIAGNOSTICS_H_
