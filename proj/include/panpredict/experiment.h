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

#ifndef PANPREDICT_EXPERIMENT_H_
#define PANPREDICT_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "panpredict/engine.h"
#include "panpredict/generator.h"
#include "panpredict/instance.h"

namespace panpredict {

inline constexpr int kConfigSchemaVersion = 1;

enum class Algorithm { kDeterministic, kRandomized };
const char* AlgorithmName(Algorithm a);  // "det" or "rand"
Algorithm ParseAlgorithm(const std::string& name);

struct ExperimentConfig {
  // Exactly one of instance_file and generator is set.
  std::string instance_file;
  std::optional<GeneratorSpec> generator;
  std::uint64_t generator_seed = 1;
  Algorithm algorithm = Algorithm::kDeterministic;
  RunConfig run;
  // Losses to report on; empty means every loss of the instance.
  std::vector<std::string> losses;
  // Empty means nothing is written.
  std::string output_dir;

  void Validate() const;
};

// Strict JSON: unknown keys and a wrong schema_version are rejected.
ExperimentConfig ParseExperimentConfig(std::string_view text);
std::string SerializeExperimentConfig(const ExperimentConfig& config);

// Loads or generates the instance the config refers to.
Instance ResolveInstance(const ExperimentConfig& config);

struct ExperimentResult {
  std::uint64_t horizon = 0;
  std::uint64_t t_star = 0;
  std::uint64_t samples = 0;
  std::uint64_t oracle_samples = 0;
  std::uint64_t selection_samples = 0;
  std::size_t cover_size = 0;
  double gamma = 0.0;
  double lambda = 0.0;
  double step_calibration_error = 0.0;
  double multiaccuracy_error = 0.0;
  double max_normalized_regret = 0.0;
  double wall_seconds = 0.0;
};

// Runs the configured algorithm and its diagnostics. With an output
// directory, writes instance.json, predictor.json, trace.jsonl,
// step_calibration.csv, multiaccuracy.csv, regret.csv and summary.json.
ExperimentResult RunExperiment(const ExperimentConfig& config);
// Same, on an already-resolved instance; the config's instance source is
// ignored.
ExperimentResult RunExperiment(const ExperimentConfig& config,
                               const Instance& instance);

// Summary JSON; the only field that varies between identical runs is the
// wall time.
std::string SummaryJson(const ExperimentConfig& config,
                        const ExperimentResult& result);

struct SweepRow {
  Algorithm algorithm;
  double epsilon;
  std::uint64_t seed;
  ExperimentResult result;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // Mean samples per (algorithm, epsilon), in input order of epsilons.
  std::vector<double> det_mean_samples;
  std::vector<double> rand_mean_samples;
};

// Runs every (algorithm, epsilon, seed) on the template's instance. With an
// output directory, each run gets its own subdirectory and sweep.csv holds
// the table.
SweepResult Sweep(const ExperimentConfig& config_template,
                  const std::vector<double>& epsilons,
                  const std::vector<std::uint64_t>& seeds,
                  const std::vector<Algorithm>& algorithms);
std::string SweepCsv(const SweepResult& sweep);

}  // namespace panpredict

#endif  // PANPREDICT_EXPERIMENT_H_
