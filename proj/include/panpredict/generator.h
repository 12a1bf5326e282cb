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

#ifndef PANPREDICT_GENERATOR_H_
#define PANPREDICT_GENERATOR_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "panpredict/hypothesis.h"
#include "panpredict/instance.h"

namespace panpredict {

enum class EtaLaw {
  // eta(x) uniform over the grid points, random masses.
  kUniformGrid,
  // Uniform mass, eta(x) = x mod 2, and the first two hypotheses are eta and
  // 1 - eta.
  kTwoPoint,
  // eta(x) on the grid within 0.2 of a label, random masses.
  kAdversarialBias,
};

const char* EtaLawName(EtaLaw law);
EtaLaw ParseEtaLaw(const std::string& name);

struct GeneratorSpec {
  std::size_t contexts = 20;
  EtaLaw eta_law = EtaLaw::kUniformGrid;
  // Grid the generated eta values sit on.
  double lambda = 0.1;
  // One group means G = {X}.
  std::size_t groups = 3;
  // Membership probability per context for random groups.
  double group_density = 0.5;
  std::size_t hypotheses = 5;
  HypothesisKind hypothesis_kind = HypothesisKind::kReal;
  // Redraws allowed per group before giving up on an empty one.
  int max_retries = 100;

  // Throws ValidationError on zero counts or out-of-range parameters.
  void Validate() const;
};

// Deterministic in (spec, seed). Attaches the standard loss library. Throws
// ValidationError if a group stays empty after max_retries redraws.
Instance GenerateInstance(const GeneratorSpec& spec, std::uint64_t seed);

}  // namespace panpredict

#endif  // PANPREDICT_GENERATOR_H_
