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

#include "panpredict/report_io.h"

#include <cmath>
#include <sstream>

#include "json_util.h"
#include "panpredict/errors.h"

namespace panpredict {
namespace {

using internal::FormatDouble;
using internal::Json;

Json ValuesToJson(const DeterministicPredictor& p, const Problem& problem) {
  Json values = Json::object();
  for (std::size_t x = 0; x < p.size(); ++x) {
    values[problem.distribution().context(x)] = problem.grid().value(p[x]);
  }
  return values;
}

DeterministicPredictor ValuesFromJson(const Json& j, const Problem& problem) {
  const FiniteDistribution& d = problem.distribution();
  if (!j.is_object()) throw ValidationError("predictor values must be an object");
  if (j.size() != d.size()) {
    throw ValidationError("predictor covers " + std::to_string(j.size()) +
                          " contexts, instance has " + std::to_string(d.size()));
  }
  std::vector<GridIndex> out(d.size());
  for (std::size_t x = 0; x < d.size(); ++x) {
    const double v = internal::Get<double>(j, d.context(x), "predictor values");
    try {
      out[x] = problem.grid().IndexOf(v);
    } catch (const DomainError&) {
      throw ValidationError("predictor value " + FormatDouble(v) + " at '" +
                            d.context(x) + "' is not on the grid");
    }
  }
  return DeterministicPredictor(std::move(out));
}

Json Header(const char* kind, const Problem& problem) {
  Json j;
  j["schema_version"] = kPredictorSchemaVersion;
  j["kind"] = kind;
  j["lambda"] = problem.grid().lambda();
  return j;
}

}  // namespace

std::string SerializePredictor(const DeterministicPredictor& p,
                               const Problem& problem) {
  Json j = Header("deterministic", problem);
  j["values"] = ValuesToJson(p, problem);
  return j.dump(2) + "\n";
}

std::string SerializePredictor(const RandomizedPredictor& p,
                               const Problem& problem) {
  const RandomizedPredictor compact = p.Compacted();
  Json j = Header("randomized", problem);
  j["components"] = Json::array();
  for (std::size_t i = 0; i < compact.size(); ++i) {
    Json c;
    c["weight"] = compact.weight(i);
    c["values"] = ValuesToJson(compact.component(i), problem);
    j["components"].push_back(c);
  }
  return j.dump(2) + "\n";
}

LoadedPredictor ParsePredictor(std::string_view text, const Problem& problem) {
  const std::string where = "predictor";
  const Json j = internal::ParseJson(text, where);
  internal::CheckKeys(j, {"schema_version", "kind", "lambda", "values", "components"},
            where);
  internal::CheckSchemaVersion(j, kPredictorSchemaVersion, where);
  const double lambda = internal::Get<double>(j, "lambda", where);
  if (!(PredictionGrid(lambda) == problem.grid())) {
    throw ValidationError("predictor grid spacing " + FormatDouble(lambda) +
                          " does not match the run's grid");
  }
  const std::string kind = internal::Get<std::string>(j, "kind", where);
  LoadedPredictor out;
  if (kind == "deterministic") {
    if (j.contains("components")) {
      throw ValidationError("deterministic predictor has components");
    }
    out.mixture = RandomizedPredictor(
        {ValuesFromJson(internal::Require(j, "values", where), problem)}, {1.0});
    return out;
  }
  if (kind != "randomized") {
    throw ValidationError("unknown predictor kind '" + kind + "'");
  }
  if (j.contains("values")) throw ValidationError("randomized predictor has values");
  out.randomized = true;
  std::vector<DeterministicPredictor> comps;
  std::vector<double> weights;
  for (const auto& c : internal::Require(j, "components", where)) {
    internal::CheckKeys(c, {"weight", "values"}, "predictor component");
    weights.push_back(internal::Get<double>(c, "weight", "predictor component"));
    comps.push_back(
        ValuesFromJson(internal::Require(c, "values", "predictor component"),
                       problem));
  }
  out.mixture = RandomizedPredictor(std::move(comps), std::move(weights));
  return out;
}

std::string ErrorReportCsv(const ErrorReport& report, const Setting& s) {
  std::ostringstream out;
  out << "g,h,w,v,raw_bias,normalized\n";
  for (const auto& row : report.rows) {
    out << s.groups.name(row.g) << ','
        << (row.h == kEmptyHypothesis
                ? std::string()
                : s.hypotheses.name(static_cast<std::size_t>(row.h)))
        << ',' << FormatDouble(s.grid.value(row.w)) << ','
        << FormatDouble(s.grid.value(row.v)) << ',' << FormatDouble(row.raw_bias)
        << ',' << FormatDouble(row.normalized) << '\n';
  }
  return out.str();
}

std::string RegretReportCsv(const RegretReport& report, const Setting& s) {
  std::ostringstream out;
  out << "loss,g,risk,best_h,best_risk,regret,normalized\n";
  for (const auto& row : report.rows) {
    out << row.loss << ',' << s.groups.name(row.g) << ',' << FormatDouble(row.risk)
        << ',' << s.hypotheses.name(static_cast<std::size_t>(row.best_h)) << ','
        << FormatDouble(row.best_risk) << ',' << FormatDouble(row.regret) << ','
        << FormatDouble(row.normalized) << '\n';
  }
  return out.str();
}

}  // namespace panpredict
