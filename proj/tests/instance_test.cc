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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "panpredict/diagnostics.h"
#include "panpredict/errors.h"
#include "test_util.h"

namespace panpredict {
namespace {

TEST(InstanceJsonTest, RoundTripsBitExactly) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    testing::RandomInstanceOptions opt;
    opt.eta_lambda = trial % 2 ? 0.0 : 0.1;
    Instance inst = testing::RandomInstance(rng, opt);
    LossSpec table;
    table.name = "custom";
    table.type = "table";
    table.space = ActionSpace::kBinary;
    table.loss0 = {0.0, 0.3};
    table.loss1 = {0.7, 0.1};
    inst.losses.push_back(table);
    const std::string text = SerializeInstance(inst);
    const Instance back = ParseInstance(text);
    EXPECT_EQ(back, inst);
    EXPECT_EQ(SerializeInstance(back), text);
  }
}

TEST(InstanceJsonTest, RejectsUnknownKeysAndVersions) {
  const std::string good = SerializeInstance(CounterexampleInstance());
  EXPECT_NO_THROW(ParseInstance(good));
  std::string extra = good;
  extra.insert(1, "\"surprise\": 1,");
  EXPECT_THROW(ParseInstance(extra), ValidationError);
  std::string version = good;
  version.replace(version.find("\"schema_version\": 1"), 19, "\"schema_version\": 2");
  EXPECT_THROW(ParseInstance(version), ValidationError);
  EXPECT_THROW(ParseInstance("{not json"), ValidationError);
}

TEST(InstanceJsonTest, RejectsInvalidContents) {
  Instance inst = CounterexampleInstance();
  inst.hypotheses[0].values = {0.0, 0.5};  // binary hypothesis, interior value
  EXPECT_THROW(ParseInstance(SerializeInstance(inst)), ValidationError);
  inst = CounterexampleInstance();
  inst.groups[0].members = {0, 0};
  EXPECT_THROW(ParseInstance(SerializeInstance(inst)), DegenerateGroupError);
}

TEST(InstanceCsvTest, ExportThenIngestIsIdentity) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    testing::RandomInstanceOptions opt;
    opt.eta_lambda = 0.0;
    const Instance inst = testing::RandomInstance(rng, opt);
    std::istringstream in(ExportInstanceCsv(inst));
    std::vector<std::string> warnings;
    const Instance back = ParseInstanceCsv(in, &warnings);
    EXPECT_EQ(back, inst);
  }
}

TEST(InstanceCsvTest, MassIsRenormalizedWithAWarning) {
  std::istringstream in(
      "context,mass,eta,group_all,hyp_a\n"
      "x,1.0,0.2,1,0\n"
      "y,1.0,0.9,1,1\n");
  std::vector<std::string> warnings;
  const Instance inst = ParseInstanceCsv(in, &warnings);
  EXPECT_DOUBLE_EQ(inst.mass[0], 0.5);
  EXPECT_DOUBLE_EQ(inst.mass[1], 0.5);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("renormalized"), std::string::npos);
  // 0/1 columns without a kind suffix are read as binary.
  EXPECT_EQ(inst.hypotheses[0].kind, HypothesisKind::kBinary);
}

TEST(InstanceCsvTest, MissingColumnIsNamed) {
  std::istringstream in("context,mass,group_all\nx,1,1\n");
  try {
    ParseInstanceCsv(in, nullptr);
    FAIL() << "expected an error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("eta"), std::string::npos);
  }
}

TEST(InstanceCsvTest, BadRowsReportTheirRowNumber) {
  const char* cases[] = {
      "context,mass,eta,group_all\nx,0.5,0.1,1\ny,-0.5,0.4,1\n",
      "context,mass,eta,group_all\nx,0.5,0.1,1\ny,0.5,1.4,1\n",
      "context,mass,eta,group_all\nx,0.5,0.1,1\ny,0.5,abc,1\n",
      "context,mass,eta,group_all\nx,0.5,0.1,1\ny,0.5\n",
  };
  for (const char* text : cases) {
    std::istringstream in(text);
    try {
      ParseInstanceCsv(in, nullptr);
      ADD_FAILURE() << "expected a parse error for " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.row(), 3) << text;
    }
  }
}

TEST(ProblemTest, LooksUpLossesByName) {
  const Problem problem(CounterexampleInstance(), PredictionGrid(0.1));
  EXPECT_EQ(problem.loss("square").name(), "square");
  EXPECT_THROW(problem.loss("absent"), ValidationError);
  EXPECT_EQ(problem.hypotheses().size(), 2u);
  EXPECT_DOUBLE_EQ(problem.groups().gamma(), 1.0);
}

}  // namespace
}  // namespace panpredict
