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

#ifndef STEERSHARE_SERIALIZATION_H
#define STEERSHARE_SERIALIZATION_H

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "steershare/entanglement.h"
#include "steershare/linalg.h"
#include "steershare/measurement.h"
#include "steershare/steering.h"

namespace steershare {

// Interchange format. Complex numbers are [re, im] pairs.
//
//   {"kind": "ket", "qubit_count": n, "amplitudes": [[re, im], ...]}
//   {"kind": "density_matrix", "qubit_count": n, "entries": [[[re, im], ...], ...]}
//
// Amplitudes follow the basis-index order; matrix entries are row-major.

nlohmann::json to_json(const Ket &ket);
nlohmann::json to_json(const DensityMatrix &rho);
Ket ket_from_json(const nlohmann::json &j);
DensityMatrix density_matrix_from_json(const nlohmann::json &j);

/// A state read from the interchange format; `pure` is set for kets.
struct LoadedState {
    DensityMatrix rho;
    std::optional<Ket> pure;
};
LoadedState state_from_json(const nlohmann::json &j);

/// [{"steerer": "A", "steered": "B", "value": .., "threshold": .., "violated": .., "notation": ..}, ...]
/// plus "uncertainty" when any entry carries one.
nlohmann::json to_json(const SteeringMatrix &m, const ViolationRule &rule = {});
nlohmann::json to_json(const SteeringConfiguration &c);

/// {"witness": v|null, "genuine_witness": b|null, "sr_verdict": "Y"|"N", "witnessing_party": "A"|null}
nlohmann::json entanglement_report(const std::optional<WitnessReport> &witness, const ShareabilityVerdict &verdict);

/// {"mode": .., "party_count": .., "seed": .., "shots": .., "settings": {"xzy": {"000": c, ...}, ...}}
nlohmann::json to_json(const CountsRecord &rec);
CountsRecord counts_from_json(const nlohmann::json &j);
/// CSV with header "setting,outcome,count".
void write_counts_csv(std::ostream &out, const CountsRecord &rec);

/// Outcome bitstring for an index, party 0 first.
std::string outcome_bits(std::size_t outcome, int party_count);

/// Compact value(uncertainty) notation, e.g. 1.62(5) for 1.62 +- 0.05. The
/// uncertainty is rounded to one significant digit and the value to the same
/// decimal place. Uncertainties of 1e-12 or less print the value with four decimals.
std::string format_with_uncertainty(double value, double uncertainty);

}  // namespace steershare

#endif
