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

#include "panpredict/experiment.h"

#include <chrono>
#include <filesystem>
#include <sstream>

#include "json_util.h"
#include "panpredict/diagnostics.h"
#include "panpredict/errors.h"
#include "panpredict/report_io.h"

namespace panpredict {
namespace {

using internal::Get;
using internal::GetOr;
using internal::Json;

GeneratorSpec GeneratorFromJson(const Json& j, std::uint64_t* seed) {
  const std::string where = "generator";
  internal::CheckKeys(j,
                      {"contexts", "eta_law", "lambda", "groups", "group_density",
                       "hypotheses", "hypothesis_kind", "max_retries", "seed"},
                      where);
  GeneratorSpec spec;
  spec.contexts = GetOr<std::size_t>(j, "contexts", spec.contexts, where);
  spec.eta_law = ParseEtaLaw(
      GetOr<std::string>(j, "eta_law", EtaLawName(spec.eta_law), where));
  spec.lambda = GetOr<double>(j, "lambda", spec.lambda, where);
  spec.groups = GetOr<std::size_t>(j, "groups", spec.groups, where);
  spec.group_density = GetOr<double>(j, "group_density", spec.group_density, where);
  spec.hypotheses = GetOr<std::size_t>(j, "hypotheses", spec.hypotheses, where);
  spec.hypothesis_kind = ParseHypothesisKind(GetOr<std::string>(
      j, "hypothesis_kind", HypothesisKindName(spec.hypothesis_kind), where));
  spec.max_retries = GetOr<int>(j, "max_retries", spec.max_retries, where);
  *seed = GetOr<std::uint64_t>(j, "seed", *seed, where);
  spec.Validate();
  return spec;
}

Json GeneratorToJson(const GeneratorSpec& spec, std::uint64_t seed) {
  Json j;
  j["contexts"] = spec.contexts;
  j["eta_law"] = EtaLawName(spec.eta_law);
  j["lambda"] = spec.lambda;
  j["groups"] = spec.groups;
  j["group_density"] = spec.group_density;
  j["hypotheses"] = spec.hypotheses;
  j["hypothesis_kind"] = HypothesisKindName(spec.hypothesis_kind);
  j["max_retries"] = spec.max_retries;
  j["seed"] = seed;
  return j;
}

std::vector<LossTable> SelectLosses(const Problem& problem,
                                    const std::vector<std::string>& names) {
  if (names.empty()) return problem.losses();
  std::vector<LossTable> out;
  for (const auto& name : names) out.push_back(problem.loss(name));
  return out;
}

void WriteArtifacts(const std::filesystem::path& dir, const Problem& problem,
                    const Instance& instance, const std::string& predictor_json,
                    const RunTrace& trace, const ErrorReport& step,
                    const ErrorReport& multi, const RegretReport& regret) {
  std::filesystem::create_directories(dir);
  const Setting s = Setting::Of(problem);
  WriteInstanceFile((dir / "instance.json").string(), instance);
  WriteTextFile((dir / "predictor.json").string(), predictor_json);
  WriteTextFile((dir / "trace.jsonl").string(), TraceToJsonl(trace, problem));
  WriteTextFile((dir / "step_calibration.csv").string(), ErrorReportCsv(step, s));
  WriteTextFile((dir / "multiaccuracy.csv").string(), ErrorReportCsv(multi, s));
  WriteTextFile((dir / "regret.csv").string(), RegretReportCsv(regret, s));
}

}  // namespace

const char* AlgorithmName(Algorithm a) {
  return a == Algorithm::kDeterministic ? "det" : "rand";
}

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "det") return Algorithm::kDeterministic;
  if (name == "rand") return Algorithm::kRandomized;
  throw ValidationError("unknown algorithm '" + name + "' (expected det or rand)");
}

void ExperimentConfig::Validate() const {
  if (instance_file.empty() == !generator.has_value()) {
    throw ValidationError(
        "config needs exactly one of instance_file and generator");
  }
  if (generator) generator->Validate();
  run.Validate();
}

ExperimentConfig ParseExperimentConfig(std::string_view text) {
  const std::string where = "config";
  const Json j = internal::ParseJson(text, where);
  internal::CheckKeys(
      j,
      {"schema_version", "instance_file", "generator", "algorithm", "epsilon",
       "delta", "lambda", "T", "c", "C", "oracle", "selection", "em_rate",
       "sample_budget", "seed", "snapshot_stride", "losses", "output_dir"},
      where);
  internal::CheckSchemaVersion(j, kConfigSchemaVersion, where);
  ExperimentConfig cfg;
  cfg.instance_file = GetOr<std::string>(j, "instance_file", "", where);
  if (j.contains("generator")) {
    cfg.generator = GeneratorFromJson(j["generator"], &cfg.generator_seed);
  }
  cfg.algorithm = ParseAlgorithm(GetOr<std::string>(j, "algorithm", "det", where));
  RunConfig& r = cfg.run;
  r.epsilon = GetOr<double>(j, "epsilon", r.epsilon, where);
  r.delta = GetOr<double>(j, "delta", r.delta, where);
  r.lambda = GetOr<double>(j, "lambda", r.lambda, where);
  r.T = GetOr<std::uint64_t>(j, "T", r.T, where);
  r.c = GetOr<double>(j, "c", r.c, where);
  r.C = GetOr<double>(j, "C", r.C, where);
  r.oracle = ParseOracleKind(
      GetOr<std::string>(j, "oracle", OracleKindName(r.oracle), where));
  r.selection = ParseSelectionMode(
      GetOr<std::string>(j, "selection", SelectionModeName(r.selection), where));
  r.em_rate = GetOr<double>(j, "em_rate", r.em_rate, where);
  r.sample_budget = GetOr<std::uint64_t>(j, "sample_budget", r.sample_budget, where);
  r.seed = GetOr<std::uint64_t>(j, "seed", r.seed, where);
  r.snapshot_stride =
      GetOr<std::uint64_t>(j, "snapshot_stride", r.snapshot_stride, where);
  cfg.losses = GetOr<std::vector<std::string>>(j, "losses", {}, where);
  cfg.output_dir = GetOr<std::string>(j, "output_dir", "", where);
  cfg.Validate();
  return cfg;
}

std::string SerializeExperimentConfig(const ExperimentConfig& config) {
  Json j;
  j["schema_version"] = kConfigSchemaVersion;
  if (!config.instance_file.empty()) j["instance_file"] = config.instance_file;
  if (config.generator) {
    j["generator"] = GeneratorToJson(*config.generator, config.generator_seed);
  }
  j["algorithm"] = AlgorithmName(config.algorithm);
  const RunConfig& r = config.run;
  j["epsilon"] = r.epsilon;
  j["delta"] = r.delta;
  j["lambda"] = r.lambda;
  j["T"] = r.T;
  j["c"] = r.c;
  j["C"] = r.C;
  j["oracle"] = OracleKindName(r.oracle);
  j["selection"] = SelectionModeName(r.selection);
  j["em_rate"] = r.em_rate;
  j["sample_budget"] = r.sample_budget;
  j["seed"] = r.seed;
  j["snapshot_stride"] = r.snapshot_stride;
  j["losses"] = config.losses;
  j["output_dir"] = config.output_dir;
  return j.dump(2) + "\n";
}

Instance ResolveInstance(const ExperimentConfig& config) {
  config.Validate();
  if (config.generator) return GenerateInstance(*config.generator, config.generator_seed);
  return ReadInstanceFile(config.instance_file);
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  return RunExperiment(config, ResolveInstance(config));
}

ExperimentResult RunExperiment(const ExperimentConfig& config,
                               const Instance& instance) {
  config.run.Validate();
  const auto start = std::chrono::steady_clock::now();
  const PredictionGrid grid(config.run.grid_lambda());
  const Problem problem(instance, grid);
  const std::vector<LossTable> losses = SelectLosses(problem, config.losses);
  const Setting s = Setting::Of(problem);

  RunTrace trace;
  std::string predictor_json;
  std::optional<PredictionLaw> law;
  if (config.algorithm == Algorithm::kDeterministic) {
    DeterministicRun run = RunDeterministic(problem, config.run);
    law.emplace(run.predictor);
    if (!config.output_dir.empty()) {
      predictor_json = SerializePredictor(run.predictor, problem);
    }
    trace = std::move(run.trace);
  } else {
    RandomizedRun run = RunRandomized(problem, config.run);
    law.emplace(run.predictor);
    if (!config.output_dir.empty()) {
      predictor_json = SerializePredictor(run.predictor, problem);
    }
    trace = std::move(run.trace);
  }
  const ErrorReport step = StepCalibrationError(*law, s);
  const ErrorReport multi = MultiaccuracyError(*law, s);
  const RegretReport regret = PanRegretReport(*law, losses, s);

  ExperimentResult result;
  result.horizon = trace.horizon;
  result.t_star = trace.t_star;
  result.samples = trace.samples;
  result.oracle_samples = trace.oracle_samples;
  result.selection_samples = trace.selection_samples;
  result.cover_size = trace.cover_size;
  result.gamma = trace.gamma;
  result.lambda = grid.lambda();
  result.step_calibration_error = step.max;
  result.multiaccuracy_error = multi.max;
  result.max_normalized_regret = regret.max_normalized;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!config.output_dir.empty()) {
    const std::filesystem::path dir(config.output_dir);
    WriteArtifacts(dir, problem, instance, predictor_json, trace, step, multi,
                   regret);
    WriteTextFile((dir / "summary.json").string(), SummaryJson(config, result));
  }
  return result;
}

std::string SummaryJson(const ExperimentConfig& config,
                        const ExperimentResult& result) {
  Json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["algorithm"] = AlgorithmName(config.algorithm);
  j["seed"] = config.run.seed;
  j["epsilon"] = config.run.epsilon;
  j["delta"] = config.run.delta;
  j["lambda"] = result.lambda;
  j["oracle"] = OracleKindName(config.run.oracle);
  j["selection"] = SelectionModeName(config.run.selection);
  j["T"] = result.horizon;
  j["t_star"] = result.t_star;
  j["cover_size"] = result.cover_size;
  j["gamma"] = result.gamma;
  j["samples"] = {{"total", result.samples},
                  {"oracle", result.oracle_samples},
                  {"selection", result.selection_samples}};
  j["step_calibration_error"] = result.step_calibration_error;
  j["multiaccuracy_error"] = result.multiaccuracy_error;
  j["max_normalized_regret"] = result.max_normalized_regret;
  j["wall_time_seconds"] = result.wall_seconds;
  return j.dump(2) + "\n";
}

SweepResult Sweep(const ExperimentConfig& config_template,
                  const std::vector<double>& epsilons,
                  const std::vector<std::uint64_t>& seeds,
                  const std::vector<Algorithm>& algorithms) {
  if (epsilons.empty() || seeds.empty() || algorithms.empty()) {
    throw ValidationError("sweep needs epsilons, seeds and algorithms");
  }
  const Instance instance = ResolveInstance(config_template);
  SweepResult out;
  out.det_mean_samples.assign(epsilons.size(), 0.0);
  out.rand_mean_samples.assign(epsilons.size(), 0.0);
  for (Algorithm alg : algorithms) {
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
      for (std::uint64_t seed : seeds) {
        ExperimentConfig cfg = config_template;
        cfg.algorithm = alg;
        cfg.run.epsilon = epsilons[e];
        cfg.run.seed = seed;
        if (!config_template.output_dir.empty()) {
          std::ostringstream name;
          name << AlgorithmName(alg) << "_eps" << internal::FormatDouble(epsilons[e])
               << "_seed" << seed;
          cfg.output_dir =
              (std::filesystem::path(config_template.output_dir) / name.str())
                  .string();
        }
        SweepRow row{alg, epsilons[e], seed, RunExperiment(cfg, instance)};
        auto& mean = alg == Algorithm::kDeterministic ? out.det_mean_samples
                                                      : out.rand_mean_samples;
        mean[e] += static_cast<double>(row.result.samples) /
                   static_cast<double>(seeds.size());
        out.rows.push_back(row);
      }
    }
  }
  if (!config_template.output_dir.empty()) {
    WriteTextFile(
        (std::filesystem::path(config_template.output_dir) / "sweep.csv").string(),
        SweepCsv(out));
  }
  return out;
}

std::string SweepCsv(const SweepResult& sweep) {
  using internal::FormatDouble;
  std::ostringstream out;
  out << "algorithm,epsilon,seed,T,samples,step_calibration_error,"
         "max_normalized_regret\n";
  for (const auto& row : sweep.rows) {
    out << AlgorithmName(row.algorithm) << ',' << FormatDouble(row.epsilon) << ','
        << row.seed << ',' << row.result.horizon << ',' << row.result.samples
        << ',' << FormatDouble(row.result.step_calibration_error) << ','
        << FormatDouble(row.result.max_normalized_regret) << '\n';
  }
  return out.str();
}

}  // namespace panpredict
