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

#include "panpredict/generator.h"

#include <cmath>
#include <random>

#include "panpredict/errors.h"
#include "panpredict/grid.h"

namespace panpredict {

const char* EtaLawName(EtaLaw law) {
  switch (law) {
    case EtaLaw::kUniformGrid:
      return "uniform-grid";
    case EtaLaw::kTwoPoint:
      return "two-point";
    case EtaLaw::kAdversarialBias:
      return "adversarial-bias";
  }
  return "unknown";
}

EtaLaw ParseEtaLaw(const std::string& name) {
  if (name == "uniform-grid") return EtaLaw::kUniformGrid;
  if (name == "two-point") return EtaLaw::kTwoPoint;
  if (name == "adversarial-bias") return EtaLaw::kAdversarialBias;
  throw ValidationError("unknown eta law '" + name + "'");
}

void GeneratorSpec::Validate() const {
  if (contexts == 0) throw ValidationError("generator needs at least one context");
  if (groups == 0) throw ValidationError("generator needs at least one group");
  if (hypotheses == 0) throw ValidationError("generator needs at least one hypothesis");
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw ValidationError("generator lambda must lie in (0, 1]");
  }
  if (!(group_density > 0.0 && group_density <= 1.0)) {
    throw ValidationError("group density must lie in (0, 1]");
  }
  if (max_retries < 0) throw ValidationError("max_retries must be nonnegative");
  if (eta_law == EtaLaw::kTwoPoint && hypotheses < 2) {
    throw ValidationError("the two-point law needs at least two hypotheses");
  }
}

Instance GenerateInstance(const GeneratorSpec& spec, std::uint64_t seed) {
  spec.Validate();
  Rng rng(seed);
  const PredictionGrid grid(spec.lambda);
  const std::size_t n = spec.contexts;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<GridIndex> any_point(0, grid.last());

  Instance inst;
  for (std::size_t x = 0; x < n; ++x) inst.contexts.push_back("x" + std::to_string(x));

  // Masses bounded away from zero keep every random group nondegenerate.
  if (spec.eta_law == EtaLaw::kTwoPoint) {
    inst.mass.assign(n, 1.0 / static_cast<double>(n));
  } else {
    double total = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      inst.mass.push_back(0.1 + unit(rng));
      total += inst.mass.back();
    }
    for (double& m : inst.mass) m /= total;
  }

  std::vector<GridIndex> near_labels;
  for (GridIndex i = 0; i <= grid.last(); ++i) {
    const double v = grid.value(i);
    if (v <= 0.2 + 1e-12 || v >= 0.8 - 1e-12) near_labels.push_back(i);
  }
  std::uniform_int_distribution<std::size_t> pick_near(0, near_labels.size() - 1);
  for (std::size_t x = 0; x < n; ++x) {
    switch (spec.eta_law) {
      case EtaLaw::kUniformGrid:
        inst.eta.push_back(grid.value(any_point(rng)));
        break;
      case EtaLaw::kTwoPoint:
        inst.eta.push_back(static_cast<double>(x % 2));
        break;
      case EtaLaw::kAdversarialBias:
        inst.eta.push_back(grid.value(near_labels[pick_near(rng)]));
        break;
    }
  }

  if (spec.groups == 1) {
    inst.groups.push_back(GroupSpec{"X", Membership(n, 1)});
  } else {
    std::bernoulli_distribution member(spec.group_density);
    for (std::size_t g = 0; g < spec.groups; ++g) {
      GroupSpec gs;
      gs.name = "g" + std::to_string(g);
      bool ok = false;
      for (int attempt = 0; attempt <= spec.max_retries && !ok; ++attempt) {
        gs.members.assign(n, 0);
        for (std::size_t x = 0; x < n; ++x) {
          gs.members[x] = member(rng) ? 1 : 0;
          ok = ok || gs.members[x];
        }
      }
      if (!ok) {
        throw ValidationError("group " + gs.name + " stayed empty after " +
                              std::to_string(spec.max_retries) + " retries");
      }
      inst.groups.push_back(std::move(gs));
    }
  }

  std::bernoulli_distribution coin(0.5);
  for (std::size_t h = 0; h < spec.hypotheses; ++h) {
    HypothesisSpec hs;
    hs.name = "h" + std::to_string(h);
    hs.kind = spec.hypothesis_kind;
    for (std::size_t x = 0; x < n; ++x) {
      double v;
      if (spec.eta_law == EtaLaw::kTwoPoint && h < 2) {
        v = h == 0 ? inst.eta[x] : 1.0 - inst.eta[x];
      } else if (spec.hypothesis_kind == HypothesisKind::kBinary) {
        v = coin(rng) ? 1.0 : 0.0;
      } else {
        v = unit(rng);
      }
      hs.values.push_back(v);
    }
    inst.hypotheses.push_back(std::move(hs));
  }
  inst.losses = StandardLossSpecs();
  inst.Validate();
  return inst;
}

}  // namespace panpredict
