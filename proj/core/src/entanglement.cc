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

#include "steershare/entanglement.h"

#include <stdexcept>

#include "steershare/states.h"

namespace steershare {

WitnessReport witness_value(const DensityMatrix &rho) {
    if (rho.qubit_count() != 3) {
        throw std::invalid_argument("the W-state witness needs a three-qubit state");
    }
    const Ket w = w_n_state(3);
    const double overlap = w.amplitudes().dot(rho.entries() * w.amplitudes()).real();
    WitnessReport r;
    r.value = 2.0 / 3.0 - overlap;
    r.genuine = r.value < 0.0;
    return r;
}

ShareabilityVerdict genuine_by_shareability(const SteeringMatrix &m, const ViolationRule &rule) {
    if (m.party_count() != 3) {
        throw std::invalid_argument("shareability certification needs exactly three parties");
    }
    SteeringConfiguration config = classify_configuration(m, rule);
    ShareabilityVerdict v;
    for (int p = 0; p < m.party_count(); ++p) {
        if (config.in_degree[static_cast<std::size_t>(p)] >= 2) {
            v.genuine = true;
            v.witnessing_party = PartyLabel{p};
            break;
        }
    }
    return v;
}

}  // namespace steershare
