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

#include "panpredict/engine.h"

#include <cmath>
#include <cstdio>

#include "json_util.h"
#include "panpredict/errors.h"
#include "panpredict/hedge.h"

namespace panpredict {
namespace {

std::uint64_t CeilCount(double x) {
  if (!std::isfinite(x) || x > 4.0e18) {
    throw ValidationError("horizon or sample size is out of range");
  }
  return static_cast<std::uint64_t>(std::ceil(std::max(x, 1.0)));
}

double ExactValue(const ObjectiveCover& cover, std::size_t id,
                  const DeterministicPredictor& p, const FiniteDistribution& d) {
  double total = 0.0;
  for (std::size_t x = 0; x < d.size(); ++x) {
    const double eta = d.eta(x);
    total += d.mass(x) * (eta * cover.Pointwise(id, x, 1, p[x]) +
                          (1.0 - eta) * cover.Pointwise(id, x, 0, p[x]));
  }
  return total;
}

double EmpiricalValue(const ObjectiveCover& cover, std::size_t id,
                      const DeterministicPredictor& p,
                      const EmpiricalSample& sample) {
  double total = 0.0;
  for (std::size_t x = 0; x < sample.num_contexts(); ++x) {
    total += static_cast<double>(sample.ones(x)) * cover.Pointwise(id, x, 1, p[x]) +
             static_cast<double>(sample.zeros(x)) * cover.Pointwise(id, x, 0, p[x]);
  }
  return total / static_cast<double>(sample.size());
}

// Applies the round's objective to every context's two-action Hedge.
void UpdateLearner(HedgeLearner& learner, const ObjectiveCover& cover,
                   std::size_t id, const DeterministicPredictor& p) {
  for (std::size_t x = 0; x < learner.size(); ++x) {
    if (!cover.Active(id, x, p[x])) continue;  // equal costs leave Hedge fixed
    learner.Update(x, HedgePointCost(cover, id, x, p[x], 0),
                   HedgePointCost(cover, id, x, p[x], 1));
  }
  learner.Advance();
}

bool KeepSnapshot(const RunConfig& config, std::uint64_t t) {
  return config.snapshot_stride > 0 && (t - 1) % config.snapshot_stride == 0;
}

}  // namespace

const char* SelectionModeName(SelectionMode mode) {
  return mode == SelectionMode::kExact ? "exact" : "fresh-sample";
}

SelectionMode ParseSelectionMode(const std::string& name) {
  if (name == "exact") return SelectionMode::kExact;
  if (name == "fresh-sample") return SelectionMode::kFreshSample;
  throw ValidationError("unknown selection mode '" + name + "'");
}

void RunConfig::Validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("epsilon must lie in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0, 1)");
  if (!(c > 0.0 && c <= 1.0)) throw ValidationError("c must lie in (0, 1]");
  if (!(C > 0.0)) throw ValidationError("C must be positive");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ValidationError("lambda must lie in [0, 1]");
  }
  if (!(em_rate >= 0.0)) throw ValidationError("em_rate must be nonnegative");
}

std::uint64_t DefaultDeterministicHorizon(double epsilon, double gamma) {
  return CeilCount(8.0 / (epsilon * epsilon * gamma));
}

std::uint64_t DefaultRandomizedHorizon(double epsilon, double gamma,
                                       std::size_t cover_size) {
  return CeilCount(8.0 * std::log(static_cast<double>(cover_size)) /
                   (epsilon * epsilon * gamma));
}

double HedgePointCost(const ObjectiveCover& cover, std::size_t id, std::size_t x,
                      GridIndex prediction, int action) {
  if (action == 0 || !cover.Active(id, x, prediction)) return 0.5;
  const ObjectiveCover::Coordinates c = cover.Decode(id);
  return 0.5 * (1.0 - cover.scale(c.g) * c.sigma);
}

DeterministicRun RunDeterministic(const Problem& problem, const RunConfig& config) {
  config.Validate();
  const ObjectiveCover cover =
      BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
  const FiniteDistribution& d = problem.distribution();
  const double gamma = cover.gamma();
  const std::uint64_t horizon =
      config.T > 0 ? config.T : DefaultDeterministicHorizon(config.epsilon, gamma);

  Rng rng(config.seed);
  SampleCounter counter(config.sample_budget);
  DistributionSampler sampler(d);

  OracleSettings settings;
  settings.kind = config.oracle;
  settings.tolerance = config.c * config.epsilon * std::sqrt(gamma);
  settings.delta = config.delta;
  settings.horizon = horizon;
  settings.em_rate = config.em_rate;
  BestResponseOracle oracle(cover, d, settings);

  // One fresh batch, independent of the dynamics, shared by every t.
  EmpiricalSample batch(d.size());
  std::uint64_t selection_samples = 0;
  if (config.selection == SelectionMode::kFreshSample) {
    selection_samples =
        CeilCount(config.C * std::log(static_cast<double>(horizon) / config.delta) /
                  (config.epsilon * config.epsilon));
    counter.Charge(selection_samples, "t* selection");
    batch = sampler.DrawMany(selection_samples, rng);
  }

  DeterministicRun run;
  RunTrace& trace = run.trace;
  trace.algorithm = "det";
  trace.horizon = horizon;
  trace.cover_size = cover.size();
  trace.cover_pre_dedup_size = cover.pre_dedup_size();
  trace.gamma = gamma;
  trace.selection_samples = selection_samples;
  trace.records.reserve(horizon);

  HedgeLearner learner(d.size(), HedgeLearningRate(2, horizon));
  double best_score = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const DeterministicPredictor p = learner.Snapshot(problem.grid());
    const OracleResponse response = oracle.Respond(p, rng, counter);

    TraceRecord rec;
    rec.t = t;
    rec.objective = response.id;
    rec.theta = cover.params(response.id);
    rec.estimate = response.estimate;
    rec.value = ExactValue(cover, response.id, p, d);
    if (config.oracle == OracleKind::kExact) rec.gap = response.estimate - 0.5;
    rec.snapshot_hash = p.Hash();
    rec.samples = counter.count();

    const double score = config.selection == SelectionMode::kExact
                             ? rec.value
                             : EmpiricalValue(cover, response.id, p, batch);
    if (score < best_score) {
      best_score = score;
      trace.t_star = t;
      run.predictor = p;
    }
    if (KeepSnapshot(config, t)) trace.snapshots.emplace_back(t, p);
    trace.records.push_back(rec);
    UpdateLearner(learner, cover, response.id, p);
  }
  trace.snapshots.emplace_back(trace.t_star, run.predictor);
  trace.samples = counter.count();
  trace.oracle_samples = trace.samples - selection_samples;
  return run;
}

RandomizedRun RunRandomized(const Problem& problem, const RunConfig& config) {
  config.Validate();
  const ObjectiveCover cover =
      BuildCover(problem.grid(), problem.groups(), problem.hypotheses());
  const FiniteDistribution& d = problem.distribution();
  const double gamma = cover.gamma();
  const std::uint64_t horizon =
      config.T > 0 ? config.T
                   : DefaultRandomizedHorizon(config.epsilon, gamma, cover.size());

  Rng rng(config.seed);
  SampleCounter counter(config.sample_budget);
  DistributionSampler sampler(d);

  RandomizedRun run;
  RunTrace& trace = run.trace;
  trace.algorithm = "rand";
  trace.horizon = horizon;
  trace.cover_size = cover.size();
  trace.cover_pre_dedup_size = cover.pre_dedup_size();
  trace.gamma = gamma;
  trace.records.reserve(horizon);

  HedgeLearner learner(d.size(), HedgeLearningRate(2, horizon));
  AdversaryHedge adversary(cover.size(), HedgeLearningRate(cover.size(), horizon));
  std::vector<DeterministicPredictor> iterates;
  iterates.reserve(horizon);
  const PredictionGrid& grid = problem.grid();
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const DeterministicPredictor p = learner.Snapshot(grid);
    const std::size_t id = adversary.Sample(rng);
    counter.Charge(1, "randomized dynamics");
    const LabeledPoint z = sampler.Draw(rng);

    TraceRecord rec;
    rec.t = t;
    rec.objective = id;
    rec.theta = cover.params(id);
    rec.estimate = cover.Pointwise(id, z.context, z.label, p[z.context]);
    rec.value = ExactValue(cover, id, p, d);
    rec.context = static_cast<long>(z.context);
    rec.label = z.label;
    rec.snapshot_hash = p.Hash();
    rec.samples = counter.count();
    trace.records.push_back(rec);
    if (KeepSnapshot(config, t)) trace.snapshots.emplace_back(t, p);

    // Adversary cost 1 - l_theta(p, z). Only objectives whose indicators are
    // on at z move away from the common value 1/2.
    const std::size_t x = z.context;
    const GridIndex px = p[x];
    const double residual = z.label - grid.value(px);
    for (std::size_t g = 0; g < cover.num_groups(); ++g) {
      if (!cover.in_group(g, x)) continue;
      const double half_step = 0.5 * cover.scale(g) * residual;
      for (std::size_t f = 0; f < cover.num_functions(); ++f) {
        if (!cover.function(f)[x]) continue;
        for (GridIndex v = px; v < cover.grid_size(); ++v) {
          adversary.Reward(cover.Encode(1, g, f, v), half_step);
          adversary.Reward(cover.Encode(-1, g, f, v), -half_step);
        }
      }
    }
    adversary.EndRound();
    UpdateLearner(learner, cover, id, p);
    iterates.push_back(p);
  }
  trace.samples = counter.count();
  trace.oracle_samples = trace.samples;
  run.predictor = RandomizedPredictor::Uniform(std::move(iterates));
  return run;
}

std::string TraceToJsonl(const RunTrace& trace, const Problem& problem) {
  using internal::Json;
  const PredictionGrid& grid = problem.grid();
  std::string out;
  char hash[17];
  for (const auto& rec : trace.records) {
    Json j;
    j["t"] = rec.t;
    j["sigma"] = rec.theta.sigma;
    j["v"] = grid.value(rec.theta.v);
    j["w"] = grid.value(rec.theta.w);
    if (rec.theta.h == kEmptyHypothesis) {
      j["h"] = nullptr;
    } else {
      j["h"] = problem.hypotheses().name(static_cast<std::size_t>(rec.theta.h));
    }
    j["g"] = problem.groups().name(rec.theta.g);
    j["estimate"] = rec.estimate;
    j["value"] = rec.value;
    if (!std::isnan(rec.gap)) j["gap"] = rec.gap;
    if (rec.context >= 0) {
      j["x"] = problem.distribution().context(static_cast<std::size_t>(rec.context));
      j["y"] = rec.label;
    }
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(rec.snapshot_hash));
    j["snapshot"] = hash;
    j["samples"] = rec.samples;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace panpredict
