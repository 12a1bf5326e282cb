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

#ifndef PANPREDICT_INSTANCE_H_
#define PANPREDICT_INSTANCE_H_

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "panpredict/distribution.h"
#include "panpredict/grid.h"
#include "panpredict/hypothesis.h"
#include "panpredict/loss.h"

namespace panpredict {

inline constexpr int kInstanceSchemaVersion = 1;

struct GroupSpec {
  std::string name;
  Membership members;
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct HypothesisSpec {
  std::string name;
  HypothesisKind kind = HypothesisKind::kReal;
  std::vector<double> values;  // unquantized
  friend bool operator==(const HypothesisSpec&, const HypothesisSpec&) = default;
};

// Everything an experiment needs about the world, independent of the
// prediction grid. This is what instance files hold.
struct Instance {
  std::vector<std::string> contexts;
  std::vector<double> mass;
  std::vector<double> eta;
  std::vector<GroupSpec> groups;
  std::vector<HypothesisSpec> hypotheses;
  std::vector<LossSpec> losses;

  // Builds and validates the distribution.
  FiniteDistribution Distribution() const;
  // Checks every domain-core invariant that does not depend on a grid.
  // Throws ValidationError or DegenerateGroupError.
  void Validate() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Instance files are JSON; see docs/instance_format.md. Serialization is
// canonical, so Serialize(Parse(Serialize(i))) == Serialize(i) byte for byte.
std::string SerializeInstance(const Instance& instance);
// Throws ValidationError on malformed input or unknown keys. A missing
// "losses" key means the standard loss library.
Instance ParseInstance(std::string_view text);
Instance ReadInstanceFile(const std::string& path);
void WriteInstanceFile(const std::string& path, const Instance& instance);

// CSV with header context,mass,eta followed by group_<name> and
// hyp_<name>[:binary|:real] columns. Masses are renormalized when they do not
// sum to one, with a message appended to `warnings`. The standard loss
// library is attached. Throws ParseError carrying the row number.
Instance ParseInstanceCsv(std::istream& in, std::vector<std::string>* warnings);
Instance IngestCsv(const std::string& path, std::vector<std::string>* warnings);
std::string ExportInstanceCsv(const Instance& instance);

// An instance bound to a prediction grid: hypotheses quantized, losses
// tabulated.
class Problem {
 public:
  Problem(const Instance& instance, const PredictionGrid& grid);

  const PredictionGrid& grid() const { return grid_; }
  const FiniteDistribution& distribution() const { return distribution_; }
  const GroupFamily& groups() const { return groups_; }
  const HypothesisClass& hypotheses() const { return hypotheses_; }
  const std::vector<LossTable>& losses() const { return losses_; }
  // Throws ValidationError if no loss has this name.
  const LossTable& loss(const std::string& name) const;

 private:
  PredictionGrid grid_;
  FiniteDistribution distribution_;
  GroupFamily groups_;
  HypothesisClass hypotheses_;
  std::vector<LossTable> losses_;
};

// Reads a whole file; throws ValidationError if it cannot be opened.
std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view contents);

}  // namespace panpredict

#endif  // PANPREDICT_INSTANCE_H_
