// Copyright 2026 The steershare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STEERSHARE_ENTANGLEMENT_H
#define STEERSHARE_ENTANGLEMENT_H

#include <optional>

#include "steershare/linalg.h"
#include "steershare/steering.h"

namespace steershare {

struct WitnessReport {
    /// Tr(rho W) with W = (2/3) I - |W><W|. Lies in [-1/3, 2/3] for physical states.
    double value = 0.0;
    bool genuine = false;
};

WitnessReport witness_value(const DensityMatrix &rho);

/// Shareability implies genuine tripartite entanglement: a party steered by
/// both others certifies it. The converse does not hold, so a "no" verdict
/// says nothing about separability.
struct ShareabilityVerdict {
    bool genuine = false;
    /// Lowest-index party with two incoming arrows, when one exists.
    std::optional<PartyLabel> witnessing_party;
};

/// Works on any matrix of values, analytic or estimated. With estimated
/// values, `rule.sigma_k` sets how many standard errors a violation must clear.
ShareabilityVerdict genuine_by_shareability(const SteeringMatrix &m, const ViolationRule &rule = {});

}  // namespace steershare

#endif
