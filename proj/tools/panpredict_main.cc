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

// Command-line front end: gen, ingest, run-det, run-rand, eval, sweep, report.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "panpredict/diagnostics.h"
#include "panpredict/errors.h"
#include "panpredict/experiment.h"
#include "panpredict/generator.h"
#include "panpredict/instance.h"
#include "panpredict/report_io.h"

namespace pp = panpredict;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitBudget = 3;

// Flags shared by run-det, run-rand and sweep. Unset flags leave the config
// file's values alone.
struct RunFlags {
  std::string config;
  std::string instance;
  std::optional<double> epsilon, delta, lambda, c, C, em_rate;
  std::optional<std::uint64_t> T, sample_budget, seed, snapshot_stride;
  std::optional<std::string> oracle, selection, out;
  std::vector<std::string> losses;

  void Register(CLI::App* app) {
    app->add_option("--config", config, "Experiment config JSON");
    app->add_option("--instance", instance, "Instance JSON (overrides config)");
    app->add_option("--epsilon", epsilon, "Target accuracy in (0, 1)");
    app->add_option("--delta", delta, "Failure probability in (0, 1)");
    app->add_option("--lambda", lambda, "Grid spacing (default: epsilon)");
    app->add_option("--T", T, "Rounds (default: algorithm's horizon)");
    app->add_option("--c", c, "Best-response tolerance factor");
    app->add_option("--C", C, "Selection sample constant");
    app->add_option("--oracle", oracle, "exact | fresh-sample | exponential-mechanism");
    app->add_option("--selection", selection, "t* selection: fresh-sample | exact");
    app->add_option("--em-rate", em_rate, "Exponential-mechanism rate");
    app->add_option("--sample-budget", sample_budget, "Max samples (0: unlimited)");
    app->add_option("--seed", seed, "RNG seed");
    app->add_option("--snapshot-stride", snapshot_stride, "Trace snapshot stride");
    app->add_option("--losses", losses, "Losses to report on")->delimiter(',');
    app->add_option("--out", out, "Output directory");
  }

  pp::ExperimentConfig Build() const {
    pp::ExperimentConfig cfg;
    if (!config.empty()) cfg = pp::ParseExperimentConfig(pp::ReadTextFile(config));
    if (!instance.empty()) {
      cfg.instance_file = instance;
      cfg.generator.reset();
    }
    pp::RunConfig& r = cfg.run;
    if (epsilon) r.epsilon = *epsilon;
    if (delta) r.delta = *delta;
    if (lambda) r.lambda = *lambda;
    if (c) r.c = *c;
    if (C) r.C = *C;
    if (em_rate) r.em_rate = *em_rate;
    if (T) r.T = *T;
    if (sample_budget) r.sample_budget = *sample_budget;
    if (seed) r.seed = *seed;
    if (snapshot_stride) r.snapshot_stride = *snapshot_stride;
    if (oracle) r.oracle = pp::ParseOracleKind(*oracle);
    if (selection) r.selection = pp::ParseSelectionMode(*selection);
    if (out) cfg.output_dir = *out;
    if (!losses.empty()) cfg.losses = losses;
    cfg.Validate();
    return cfg;
  }
};

void PrintResult(const pp::ExperimentConfig& cfg, const pp::ExperimentResult& r) {
  std::cout << pp::SummaryJson(cfg, r);
}

int RunGen(const pp::GeneratorSpec& spec, std::uint64_t seed,
           const std::string& format, const std::string& out) {
  const pp::Instance inst = pp::GenerateInstance(spec, seed);
  const std::string text =
      format == "csv" ? pp::ExportInstanceCsv(inst) : pp::SerializeInstance(inst);
  if (out.empty()) {
    std::cout << text;
  } else {
    pp::WriteTextFile(out, text);
  }
  return 0;
}

int RunIngest(const std::string& csv, const std::string& out) {
  std::vector<std::string> warnings;
  const pp::Instance inst = pp::IngestCsv(csv, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  const std::string text = pp::SerializeInstance(inst);
  if (out.empty()) {
    std::cout << text;
  } else {
    pp::WriteTextFile(out, text);
  }
  return 0;
}

double PredictorLambda(const std::string& text) {
  try {
    return nlohmann::json::parse(text).at("lambda").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw pp::ValidationError(std::string("predictor file: ") + e.what());
  }
}

struct Evaluation {
  pp::ErrorReport step;
  pp::ErrorReport multi;
  pp::RegretReport regret;
};

Evaluation Evaluate(const pp::Problem& problem, const pp::LoadedPredictor& p) {
  const pp::Setting s = pp::Setting::Of(problem);
  const pp::PredictionLaw law = p.randomized
                                    ? pp::PredictionLaw(p.mixture)
                                    : pp::PredictionLaw(p.mixture.component(0));
  return {pp::StepCalibrationError(law, s), pp::MultiaccuracyError(law, s),
          pp::PanRegretReport(law, problem.losses(), s)};
}

int RunEval(const std::string& instance_path, const std::string& predictor_path,
            const std::string& out) {
  const pp::Instance inst = pp::ReadInstanceFile(instance_path);
  const std::string text = pp::ReadTextFile(predictor_path);
  const pp::Problem problem(inst, pp::PredictionGrid(PredictorLambda(text)));
  const pp::LoadedPredictor p = pp::ParsePredictor(text, problem);
  const Evaluation ev = Evaluate(problem, p);
  nlohmann::ordered_json j;
  j["kind"] = p.randomized ? "randomized" : "deterministic";
  j["step_calibration_error"] = ev.step.max;
  j["multiaccuracy_error"] = ev.multi.max;
  j["max_normalized_regret"] = ev.regret.max_normalized;
  std::cout << j.dump(2) << '\n';
  if (!out.empty()) {
    const std::filesystem::path dir(out);
    std::filesystem::create_directories(dir);
    const pp::Setting s = pp::Setting::Of(problem);
    pp::WriteTextFile((dir / "step_calibration.csv").string(),
                      pp::ErrorReportCsv(ev.step, s));
    pp::WriteTextFile((dir / "multiaccuracy.csv").string(),
                      pp::ErrorReportCsv(ev.multi, s));
    pp::WriteTextFile((dir / "regret.csv").string(),
                      pp::RegretReportCsv(ev.regret, s));
  }
  return 0;
}

// Reloads a run directory, recomputes its diagnostics and prints them next
// to the recorded summary. Exits 2 if they disagree.
int RunReport(const std::string& dir_name) {
  const std::filesystem::path dir(dir_name);
  const auto summary =
      nlohmann::json::parse(pp::ReadTextFile((dir / "summary.json").string()));
  const pp::Instance inst = pp::ReadInstanceFile((dir / "instance.json").string());
  const std::string text = pp::ReadTextFile((dir / "predictor.json").string());
  const pp::Problem problem(inst, pp::PredictionGrid(PredictorLambda(text)));
  const pp::LoadedPredictor p = pp::ParsePredictor(text, problem);
  const Evaluation ev = Evaluate(problem, p);
  const double recorded = summary.at("step_calibration_error").get<double>();
  std::cout << "algorithm                " << summary.at("algorithm").get<std::string>()
            << "\nepsilon                  " << summary.at("epsilon").get<double>()
            << "\nT                        " << summary.at("T").get<std::uint64_t>()
            << "\nsamples                  "
            << summary.at("samples").at("total").get<std::uint64_t>()
            << "\nstep calibration error   " << ev.step.max
            << "\nmultiaccuracy error      " << ev.multi.max
            << "\nmax normalized regret    " << ev.regret.max_normalized << '\n';
  for (const auto& row : ev.regret.rows) {
    std::cout << "  " << row.loss << " / " << problem.groups().name(row.g)
              << ": regret " << row.regret << " (normalized " << row.normalized
              << ")\n";
  }
  if (std::abs(recorded - ev.step.max) > 1e-9) {
    std::cerr << "error: recorded step calibration error " << recorded
              << " does not match the reloaded predictor\n";
    return kExitRuntime;
  }
  return 0;
}

int RunSweep(const RunFlags& flags, const std::vector<double>& epsilons,
             const std::vector<std::uint64_t>& seeds,
             const std::vector<std::string>& algorithm_names) {
  const pp::ExperimentConfig cfg = flags.Build();
  std::vector<pp::Algorithm> algorithms;
  for (const auto& name : algorithm_names) algorithms.push_back(pp::ParseAlgorithm(name));
  const pp::SweepResult sweep = pp::Sweep(cfg, epsilons, seeds, algorithms);
  std::cout << pp::SweepCsv(sweep);
  for (std::size_t e = 1; e < epsilons.size(); ++e) {
    if (sweep.rand_mean_samples[e - 1] > 0.0) {
      std::cerr << "rand sample ratio " << epsilons[e - 1] << " -> " << epsilons[e]
                << ": " << sweep.rand_mean_samples[e] / sweep.rand_mean_samples[e - 1]
                << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Step-calibrated panprediction: learning and diagnostics"};
  app.require_subcommand(1);

  pp::GeneratorSpec spec;
  std::string eta_law = "uniform-grid";
  std::string kind = "real";
  std::uint64_t gen_seed = 1;
  std::string gen_format = "json";
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--contexts", spec.contexts, "Number of contexts");
  gen->add_option("--eta-law", eta_law, "uniform-grid | two-point | adversarial-bias");
  gen->add_option("--lambda", spec.lambda, "Grid the labels sit on");
  gen->add_option("--groups", spec.groups, "Number of groups (1: whole domain)");
  gen->add_option("--density", spec.group_density, "Group membership probability");
  gen->add_option("--hypotheses", spec.hypotheses, "Number of hypotheses");
  gen->add_option("--kind", kind, "Hypothesis kind: binary | real");
  gen->add_option("--max-retries", spec.max_retries, "Redraws for empty groups");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--format", gen_format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  gen->add_option("-o,--out", gen_out, "Output file (default: stdout)");

  std::string csv_path;
  std::string ingest_out;
  CLI::App* ingest = app.add_subcommand("ingest", "Convert a CSV table to an instance");
  ingest->add_option("csv", csv_path, "Input CSV")->required();
  ingest->add_option("-o,--out", ingest_out, "Output file (default: stdout)");

  RunFlags det_flags;
  CLI::App* run_det = app.add_subcommand("run-det", "Deterministic dynamics");
  det_flags.Register(run_det);
  RunFlags rand_flags;
  CLI::App* run_rand = app.add_subcommand("run-rand", "Randomized dynamics");
  rand_flags.Register(run_rand);

  std::string eval_instance;
  std::string eval_predictor;
  std::string eval_out;
  CLI::App* eval = app.add_subcommand("eval", "Diagnose a saved predictor");
  eval->add_option("--instance", eval_instance, "Instance JSON")->required();
  eval->add_option("--predictor", eval_predictor, "Predictor JSON")->required();
  eval->add_option("--out", eval_out, "Directory for CSV reports");

  RunFlags sweep_flags;
  std::vector<double> epsilons{0.2, 0.1, 0.05};
  std::vector<std::uint64_t> seeds{1};
  std::vector<std::string> algorithms{"det", "rand"};
  CLI::App* sweep = app.add_subcommand("sweep", "Run a grid over epsilon and seeds");
  sweep_flags.Register(sweep);
  sweep->add_option("--epsilons", epsilons, "Comma-separated epsilons")->delimiter(',');
  sweep->add_option("--seeds", seeds, "Comma-separated seeds")->delimiter(',');
  sweep->add_option("--algorithms", algorithms, "det,rand")->delimiter(',');

  std::string report_dir;
  CLI::App* report = app.add_subcommand("report", "Reload and summarize a run directory");
  report->add_option("dir", report_dir, "Run output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*gen) {
      spec.eta_law = pp::ParseEtaLaw(eta_law);
      spec.hypothesis_kind = pp::ParseHypothesisKind(kind);
      return RunGen(spec, gen_seed, gen_format, gen_out);
    }
    if (*ingest) return RunIngest(csv_path, ingest_out);
    if (*run_det || *run_rand) {
      pp::ExperimentConfig cfg = (*run_det ? det_flags : rand_flags).Build();
      cfg.algorithm = *run_det ? pp::Algorithm::kDeterministic
                               : pp::Algorithm::kRandomized;
      PrintResult(cfg, pp::RunExperiment(cfg));
      return 0;
    }
    if (*eval) return RunEval(eval_instance, eval_predictor, eval_out);
    if (*sweep) return RunSweep(sweep_flags, epsilons, seeds, algorithms);
    if (*report) return RunReport(report_dir);
  } catch (const pp::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const pp::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
