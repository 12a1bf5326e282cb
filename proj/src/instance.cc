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

#include "panpredict/instance.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json_util.h"
#include "panpredict/errors.h"

namespace panpredict {
namespace {

using internal::CheckKeys;
using internal::FormatDouble;
using internal::Get;
using internal::Json;

const char* SpaceName(ActionSpace s) {
  return s == ActionSpace::kBinary ? "binary" : "grid";
}

ActionSpace ParseSpace(const std::string& s) {
  if (s == "binary") return ActionSpace::kBinary;
  if (s == "grid") return ActionSpace::kGrid;
  throw ValidationError("unknown action space '" + s + "'");
}

Json LossToJson(const LossSpec& spec) {
  Json j;
  j["name"] = spec.name;
  j["type"] = spec.type;
  if (spec.type == "pinball") j["tau"] = spec.tau;
  if (spec.type == "table") {
    j["space"] = SpaceName(spec.space);
    j["loss0"] = spec.loss0;
    j["loss1"] = spec.loss1;
  }
  return j;
}

LossSpec LossFromJson(const Json& j) {
  const std::string where = "loss entry";
  CheckKeys(j, {"name", "type", "tau", "space", "loss0", "loss1"}, where);
  LossSpec spec;
  spec.name = Get<std::string>(j, "name", where);
  spec.type = Get<std::string>(j, "type", where);
  const std::string named = where + " '" + spec.name + "'";
  if (spec.type == "pinball") {
    spec.tau = internal::GetOr<double>(j, "tau", 0.25, named);
  } else if (spec.type == "table") {
    spec.space = ParseSpace(Get<std::string>(j, "space", named));
    spec.loss0 = Get<std::vector<double>>(j, "loss0", named);
    spec.loss1 = Get<std::vector<double>>(j, "loss1", named);
  } else if (spec.type == "zero-one") {
    spec.space = ActionSpace::kBinary;
  } else if (spec.type != "square" && spec.type != "hinge") {
    throw ValidationError("unknown loss type '" + spec.type + "'");
  }
  if (spec.type != "pinball" && j.contains("tau")) {
    throw ValidationError("tau is only valid for pinball losses");
  }
  if (spec.type != "table" &&
      (j.contains("space") || j.contains("loss0") || j.contains("loss1"))) {
    throw ValidationError("space/loss0/loss1 are only valid for table losses");
  }
  return spec;
}

double ParseDouble(std::string_view s, int row, const std::string& column) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("malformed number '" + std::string(s) + "' in column " +
                         column,
                     row);
  }
  return v;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

FiniteDistribution Instance::Distribution() const {
  return FiniteDistribution(contexts, mass, eta);
}

void Instance::Validate() const {
  const FiniteDistribution d = Distribution();
  std::vector<std::string> names;
  std::vector<Membership> members;
  for (const auto& g : groups) {
    names.push_back(g.name);
    members.push_back(g.members);
  }
  if (groups.empty()) throw ValidationError("instance has no groups");
  GroupFamily family(d, std::move(names), std::move(members));
  for (const auto& h : hypotheses) {
    if (h.values.size() != contexts.size()) {
      throw ValidationError("hypothesis '" + h.name +
                            "' has the wrong number of entries");
    }
    for (double v : h.values) {
      const bool ok = h.kind == HypothesisKind::kBinary
                          ? (v == 0.0 || v == 1.0)
                          : (v >= 0.0 && v <= 1.0);
      if (!ok) {
        throw ValidationError("hypothesis '" + h.name +
                              "' has a value outside its range");
      }
    }
  }
}

std::string SerializeInstance(const Instance& instance) {
  Json j;
  j["schema_version"] = kInstanceSchemaVersion;
  j["contexts"] = instance.contexts;
  j["mass"] = instance.mass;
  j["eta"] = instance.eta;
  j["groups"] = Json::array();
  for (const auto& g : instance.groups) {
    Json e;
    e["name"] = g.name;
    e["members"] = g.members;
    j["groups"].push_back(e);
  }
  j["hypotheses"] = Json::array();
  for (const auto& h : instance.hypotheses) {
    Json e;
    e["name"] = h.name;
    e["kind"] = HypothesisKindName(h.kind);
    e["values"] = h.values;
    j["hypotheses"].push_back(e);
  }
  j["losses"] = Json::array();
  for (const auto& l : instance.losses) j["losses"].push_back(LossToJson(l));
  return j.dump(2) + "\n";
}

Instance ParseInstance(std::string_view text) {
  const std::string where = "instance";
  const Json j = internal::ParseJson(text, where);
  CheckKeys(j,
            {"schema_version", "contexts", "mass", "eta", "groups",
             "hypotheses", "losses"},
            where);
  internal::CheckSchemaVersion(j, kInstanceSchemaVersion, where);
  Instance inst;
  inst.contexts = Get<std::vector<std::string>>(j, "contexts", where);
  inst.mass = Get<std::vector<double>>(j, "mass", where);
  inst.eta = Get<std::vector<double>>(j, "eta", where);
  for (const auto& e : internal::Require(j, "groups", where)) {
    CheckKeys(e, {"name", "members"}, "group entry");
    GroupSpec g;
    g.name = Get<std::string>(e, "name", "group entry");
    g.members = Get<Membership>(e, "members", "group '" + g.name + "'");
    inst.groups.push_back(std::move(g));
  }
  if (j.contains("hypotheses")) {
    for (const auto& e : j["hypotheses"]) {
      CheckKeys(e, {"name", "kind", "values"}, "hypothesis entry");
      HypothesisSpec h;
      h.name = Get<std::string>(e, "name", "hypothesis entry");
      h.kind = ParseHypothesisKind(
          Get<std::string>(e, "kind", "hypothesis '" + h.name + "'"));
      h.values =
          Get<std::vector<double>>(e, "values", "hypothesis '" + h.name + "'");
      inst.hypotheses.push_back(std::move(h));
    }
  }
  if (j.contains("losses")) {
    for (const auto& e : j["losses"]) inst.losses.push_back(LossFromJson(e));
  } else {
    inst.losses = StandardLossSpecs();
  }
  inst.Validate();
  return inst;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

Instance ReadInstanceFile(const std::string& path) {
  return ParseInstance(ReadTextFile(path));
}

void WriteInstanceFile(const std::string& path, const Instance& instance) {
  WriteTextFile(path, SerializeInstance(instance));
}

Instance ParseInstanceCsv(std::istream& in, std::vector<std::string>* warnings) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV input", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = SplitCsvLine(line);

  int col_context = -1, col_mass = -1, col_eta = -1;
  struct HypColumn {
    int col;
    std::string name;
    bool explicit_kind;
    HypothesisKind kind;
  };
  std::vector<std::pair<int, std::string>> group_cols;
  std::vector<HypColumn> hyp_cols;
  for (int c = 0; c < static_cast<int>(header.size()); ++c) {
    const std::string& h = header[c];
    if (h == "context") {
      col_context = c;
    } else if (h == "mass") {
      col_mass = c;
    } else if (h == "eta") {
      col_eta = c;
    } else if (h.rfind("group_", 0) == 0) {
      group_cols.emplace_back(c, h.substr(6));
    } else if (h.rfind("hyp_", 0) == 0) {
      std::string name = h.substr(4);
      HypColumn hc{c, name, false, HypothesisKind::kReal};
      const auto colon = name.rfind(':');
      if (colon != std::string::npos) {
        hc.name = name.substr(0, colon);
        hc.kind = ParseHypothesisKind(name.substr(colon + 1));
        hc.explicit_kind = true;
      }
      hyp_cols.push_back(hc);
    } else {
      throw ParseError("unexpected column '" + h + "'", 1);
    }
  }
  if (col_context < 0) throw ValidationError("CSV is missing column 'context'");
  if (col_mass < 0) throw ValidationError("CSV is missing column 'mass'");
  if (col_eta < 0) throw ValidationError("CSV is missing column 'eta'");

  Instance inst;
  inst.groups.resize(group_cols.size());
  for (std::size_t g = 0; g < group_cols.size(); ++g) {
    inst.groups[g].name = group_cols[g].second;
  }
  std::vector<std::vector<double>> hyp_values(hyp_cols.size());
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) +
                           " cells, found " + std::to_string(cells.size()),
                       row);
    }
    inst.contexts.push_back(cells[col_context]);
    const double m = ParseDouble(cells[col_mass], row, "mass");
    if (!(m >= 0.0) || !std::isfinite(m)) throw ParseError("negative mass", row);
    const double e = ParseDouble(cells[col_eta], row, "eta");
    if (!(e >= 0.0 && e <= 1.0)) throw ParseError("eta outside [0, 1]", row);
    inst.mass.push_back(m);
    inst.eta.push_back(e);
    for (std::size_t g = 0; g < group_cols.size(); ++g) {
      const double b = ParseDouble(cells[group_cols[g].first], row,
                                   header[group_cols[g].first]);
      if (b != 0.0 && b != 1.0) {
        throw ParseError("group membership must be 0 or 1", row);
      }
      inst.groups[g].members.push_back(static_cast<std::uint8_t>(b));
    }
    for (std::size_t h = 0; h < hyp_cols.size(); ++h) {
      const double v = ParseDouble(cells[hyp_cols[h].col], row,
                                   header[hyp_cols[h].col]);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ParseError("hypothesis value outside [0, 1]", row);
      }
      hyp_values[h].push_back(v);
    }
  }
  if (inst.contexts.empty()) throw ParseError("CSV has no data rows", row);

  double total = 0.0;
  for (double m : inst.mass) total += m;
  if (total <= 0.0) throw ValidationError("CSV masses sum to zero");
  if (std::abs(total - 1.0) > kMassTolerance) {
    for (double& m : inst.mass) m /= total;
    if (warnings) {
      warnings->push_back("mass column summed to " + FormatDouble(total) +
                          "; renormalized to 1");
    }
  }
  for (std::size_t h = 0; h < hyp_cols.size(); ++h) {
    HypothesisSpec spec;
    spec.name = hyp_cols[h].name;
    if (hyp_cols[h].explicit_kind) {
      spec.kind = hyp_cols[h].kind;
    } else {
      bool binary = true;
      for (double v : hyp_values[h]) binary = binary && (v == 0.0 || v == 1.0);
      spec.kind = binary ? HypothesisKind::kBinary : HypothesisKind::kReal;
    }
    spec.values = std::move(hyp_values[h]);
    inst.hypotheses.push_back(std::move(spec));
  }
  inst.losses = StandardLossSpecs();
  inst.Validate();
  return inst;
}

Instance IngestCsv(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return ParseInstanceCsv(in, warnings);
}

std::string ExportInstanceCsv(const Instance& instance) {
  std::ostringstream out;
  out << "context,mass,eta";
  for (const auto& g : instance.groups) out << ",group_" << g.name;
  for (const auto& h : instance.hypotheses) {
    out << ",hyp_" << h.name << ':' << HypothesisKindName(h.kind);
  }
  out << '\n';
  for (std::size_t x = 0; x < instance.contexts.size(); ++x) {
    out << instance.contexts[x] << ',' << FormatDouble(instance.mass[x]) << ','
        << FormatDouble(instance.eta[x]);
    for (const auto& g : instance.groups) out << ',' << int{g.members[x]};
    for (const auto& h : instance.hypotheses) {
      out << ',' << FormatDouble(h.values[x]);
    }
    out << '\n';
  }
  return out.str();
}

namespace {

GroupFamily MakeGroups(const Instance& inst, const FiniteDistribution& d) {
  std::vector<std::string> names;
  std::vector<Membership> members;
  for (const auto& g : inst.groups) {
    names.push_back(g.name);
    members.push_back(g.members);
  }
  if (names.empty()) throw ValidationError("instance has no groups");
  return GroupFamily(d, std::move(names), std::move(members));
}

HypothesisClass MakeHypotheses(const Instance& inst, const PredictionGrid& grid) {
  std::vector<std::string> names;
  std::vector<HypothesisKind> kinds;
  std::vector<std::vector<double>> values;
  for (const auto& h : inst.hypotheses) {
    names.push_back(h.name);
    kinds.push_back(h.kind);
    values.push_back(h.values);
  }
  return HypothesisClass(grid, inst.contexts.size(), std::move(names),
                         std::move(kinds), values);
}

}  // namespace

Problem::Problem(const Instance& instance, const PredictionGrid& grid)
    : grid_(grid),
      distribution_(instance.Distribution()),
      groups_(MakeGroups(instance, distribution_)),
      hypotheses_(MakeHypotheses(instance, grid_)) {
  for (const auto& spec : instance.losses) {
    losses_.push_back(BuildLoss(spec, grid_));
  }
}

const LossTable& Problem::loss(const std::string& name) const {
  for (const auto& l : losses_) {
    if (l.name() == name) return l;
  }
  throw ValidationError("no loss named '" + name + "'");
}

}  // namespace panpredict
