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

#include "panpredict/diagnostics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "panpredict/errors.h"

namespace panpredict {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Grid values at or above this count as 1/2 for extraction.
constexpr double kHalf = 0.5 - 1e-12;

ErrorReport BuildErrorReport(const PredictionLaw& p, const Setting& s,
                             bool all_v) {
  const ObjectiveCover cover(s.grid, s.groups, s.hypotheses);
  const BiasTable biases = cover.Biases(p, s.distribution);
  ErrorReport report;
  report.group_max.assign(s.groups.size(), 0.0);
  bool have_witness = false;
  auto emit = [&](std::size_t g, int h, GridIndex w) {
    const std::size_t f = cover.FunctionOf(h, w);
    const double pg = s.groups.mass(g);
    const GridIndex first_v = all_v ? 0 : s.grid.last();
    for (GridIndex v = first_v; v <= s.grid.last(); ++v) {
      ErrorRow row;
      row.v = v;
      row.w = w;
      row.h = h;
      row.g = g;
      row.raw_bias = biases.at(g, f, v) / pg;
      row.normalized = std::abs(row.raw_bias) * std::sqrt(pg);
      report.group_max[g] = std::max(report.group_max[g], row.normalized);
      if (!have_witness || row.normalized > report.max) {
        report.max = row.normalized;
        report.witness = row;
        have_witness = true;
      }
      report.rows.push_back(row);
    }
  };
  for (std::size_t g = 0; g < s.groups.size(); ++g) {
    emit(g, kEmptyHypothesis, s.grid.last());
    for (std::size_t h = 0; h < s.hypotheses.size(); ++h) {
      for (GridIndex w = 0; w <= s.grid.last(); ++w) {
        emit(g, static_cast<int>(h), w);
      }
    }
  }
  return report;
}

// Prediction value of an atom, for the residual y - p(x).
double Residual(const Setting& s, GridIndex a, int y) {
  return y - s.grid.value(a);
}

}  // namespace

ErrorReport StepCalibrationError(const PredictionLaw& p, const Setting& s) {
  return BuildErrorReport(p, s, /*all_v=*/true);
}

ErrorReport MultiaccuracyError(const PredictionLaw& p, const Setting& s) {
  return BuildErrorReport(p, s, /*all_v=*/false);
}

double PostProcessedRisk(const PredictionLaw& p, const LossTable& loss,
                         const Setting& s, std::size_t g) {
  return GroupConditionalExpectation(
      s.distribution, s.groups.members(g), [&](std::size_t x, int y) {
        double out = 0.0;
        for (const auto& atom : p.at(x)) {
          out += atom.prob * loss.Loss(loss.PostProcessed(atom.value), y);
        }
        return out;
      });
}

bool IsComparator(std::size_t h, const LossTable& loss, const Setting& s) {
  for (GridIndex v : s.hypotheses.values(h)) {
    if (!loss.Admits(v)) return false;
  }
  return true;
}

double HypothesisRisk(std::size_t h, const LossTable& loss, const Setting& s,
                      std::size_t g) {
  if (!IsComparator(h, loss, s)) {
    throw DomainError("hypothesis '" + s.hypotheses.name(h) +
                      "' predicts outside the action space of loss '" +
                      loss.name() + "'");
  }
  return GroupConditionalExpectation(
      s.distribution, s.groups.members(g), [&](std::size_t x, int y) {
        return loss.Loss(s.hypotheses.value(h, x), y);
      });
}

BestHypothesis BestInClass(const LossTable& loss, const Setting& s,
                           std::size_t g) {
  BestHypothesis best;
  for (std::size_t h = 0; h < s.hypotheses.size(); ++h) {
    if (!IsComparator(h, loss, s)) continue;
    const double r = HypothesisRisk(h, loss, s, g);
    if (best.h < 0 || r < best.risk) {
      best.h = static_cast<int>(h);
      best.risk = r;
    }
  }
  return best;
}

double PanRegret(const PredictionLaw& p, const LossTable& loss, const Setting& s,
                 std::size_t g) {
  const BestHypothesis best = BestInClass(loss, s, g);
  if (best.h < 0) return kNaN;
  return PostProcessedRisk(p, loss, s, g) - best.risk;
}

RegretReport PanRegretReport(const PredictionLaw& p,
                             const std::vector<LossTable>& losses,
                             const Setting& s) {
  RegretReport report;
  for (const auto& loss : losses) {
    for (std::size_t g = 0; g < s.groups.size(); ++g) {
      const BestHypothesis best = BestInClass(loss, s, g);
      if (best.h < 0) continue;
      RegretRow row;
      row.loss = loss.name();
      row.g = g;
      row.risk = PostProcessedRisk(p, loss, s, g);
      row.best_risk = best.risk;
      row.best_h = best.h;
      row.regret = row.risk - row.best_risk;
      row.normalized = row.regret * std::sqrt(s.groups.mass(g));
      report.max_normalized = report.rows.empty()
                                  ? row.normalized
                                  : std::max(report.max_normalized, row.normalized);
      report.rows.push_back(row);
    }
  }
  return report;
}

RegretReport OmnipredictionReport(const PredictionLaw& p,
                                  const std::vector<LossTable>& losses,
                                  const PredictionGrid& grid,
                                  const FiniteDistribution& d,
                                  const HypothesisClass& hypotheses) {
  const GroupFamily whole = GroupFamily::WholeDomain(d);
  return PanRegretReport(p, losses, Setting{grid, d, whole, hypotheses});
}

double DecisionOiGap(const PredictionLaw& p, const LossTable& loss,
                     const Setting& s, std::size_t g) {
  const std::vector<double> delta = PostProcessedDerivative(loss);
  return std::abs(GroupConditionalExpectation(
      s.distribution, s.groups.members(g), [&](std::size_t x, int y) {
        double out = 0.0;
        for (const auto& atom : p.at(x)) {
          out += atom.prob * Residual(s, atom.value, y) * delta[atom.value];
        }
        return out;
      }));
}

double HypothesisOiGap(const PredictionLaw& p, const LossTable& loss,
                       std::size_t h, const Setting& s, std::size_t g) {
  if (!IsComparator(h, loss, s)) {
    throw DomainError("hypothesis outside the action space of the loss");
  }
  return std::abs(GroupConditionalExpectation(
      s.distribution, s.groups.members(g), [&](std::size_t x, int y) {
        const GridIndex a = s.hypotheses.value(h, x);
        const double d = loss.Loss(a, 1) - loss.Loss(a, 0);
        double out = 0.0;
        for (const auto& atom : p.at(x)) {
          out += atom.prob * Residual(s, atom.value, y) * d;
        }
        return out;
      }));
}

double MarginalStepSup(const PredictionLaw& p, const Setting& s, std::size_t g) {
  double worst = 0.0;
  for (GridIndex v = 0; v <= s.grid.last(); ++v) {
    const double b = GroupConditionalExpectation(
        s.distribution, s.groups.members(g), [&](std::size_t x, int y) {
          double out = 0.0;
          for (const auto& atom : p.at(x)) {
            if (atom.value <= v) out += atom.prob * Residual(s, atom.value, y);
          }
          return out;
        });
    worst = std::max(worst, std::abs(b));
  }
  return worst;
}

double HypothesisSublevelSup(const PredictionLaw& p, std::size_t h,
                             const Setting& s, std::size_t g) {
  double worst = 0.0;
  for (GridIndex w = 0; w <= s.grid.last(); ++w) {
    const double b = GroupConditionalExpectation(
        s.distribution, s.groups.members(g), [&](std::size_t x, int y) {
          if (s.hypotheses.value(h, x) > w) return 0.0;
          double out = 0.0;
          for (const auto& atom : p.at(x)) {
            out += atom.prob * Residual(s, atom.value, y);
          }
          return out;
        });
    worst = std::max(worst, std::abs(b));
  }
  return worst;
}

double DecisionOiBound(const PredictionLaw& p, const Setting& s, std::size_t g,
                       double tau) {
  return 9.0 * MarginalStepSup(p, s, g) + tau / std::sqrt(s.groups.mass(g));
}

double HypothesisOiBound(const PredictionLaw& p, std::size_t h, const Setting& s,
                         std::size_t g, double tau) {
  return 9.0 * HypothesisSublevelSup(p, h, s, g) + tau / std::sqrt(s.groups.mass(g));
}

DeterministicPredictor MultigroupExtract(const DeterministicPredictor& p,
                                         const PredictionGrid& grid) {
  std::vector<GridIndex> out(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    out[x] = grid.value(p[x]) >= kHalf ? grid.last() : 0;
  }
  return DeterministicPredictor(std::move(out));
}

RandomizedPredictor MultigroupExtract(const RandomizedPredictor& p,
                                      const PredictionGrid& grid) {
  std::vector<DeterministicPredictor> comps;
  std::vector<double> weights;
  for (std::size_t i = 0; i < p.size(); ++i) {
    comps.push_back(MultigroupExtract(p.component(i), grid));
    weights.push_back(p.weight(i));
  }
  return RandomizedPredictor(std::move(comps), std::move(weights));
}

double ClassifierGroupRegret(const PredictionLaw& classifier, const Setting& s,
                             std::size_t g) {
  const GridIndex one = s.grid.last();
  auto mistakes = [&](int y, GridIndex c) {
    if (c != 0 && c != one) throw DomainError("classifier is not binary");
    return (c == one) != (y == 1) ? 1.0 : 0.0;
  };
  const double risk = GroupConditionalExpectation(
      s.distribution, s.groups.members(g), [&](std::size_t x, int y) {
        double out = 0.0;
        for (const auto& atom : classifier.at(x)) {
          out += atom.prob * mistakes(y, atom.value);
        }
        return out;
      });
  double best = kNaN;
  for (std::size_t h = 0; h < s.hypotheses.size(); ++h) {
    if (!s.hypotheses.binary_valued(h)) continue;
    const double r = GroupConditionalExpectation(
        s.distribution, s.groups.members(g), [&](std::size_t x, int y) {
          return mistakes(y, s.hypotheses.value(h, x));
        });
    if (std::isnan(best) || r < best) best = r;
  }
  return risk - best;
}

Instance CounterexampleInstance() {
  Instance inst;
  inst.contexts = {"x", "x'"};
  inst.mass = {0.5, 0.5};
  inst.eta = {0.0, 1.0};
  inst.groups = {GroupSpec{"X", {1, 1}}};
  inst.hypotheses = {HypothesisSpec{"h", HypothesisKind::kBinary, {0.0, 1.0}},
                     HypothesisSpec{"h'", HypothesisKind::kBinary, {1.0, 0.0}}};
  inst.losses = StandardLossSpecs();
  return inst;
}

}  // namespace panpredict
