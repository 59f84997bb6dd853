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

#ifndef STEERSHARE_MEASUREMENT_H
#define STEERSHARE_MEASUREMENT_H

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "steershare/linalg.h"
#include "steershare/steering.h"

namespace steershare {

/// Raised when a counts record cannot support a stable estimate, e.g. an
/// aligned setting with fewer than two recorded events.
class InsufficientCounts : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One Pauli axis per party, written as a string such as "xzy".
class MeasurementSetting {
  public:
    explicit MeasurementSetting(std::vector<PauliAxis> axes);
    static MeasurementSetting parse(std::string_view text);

    int party_count() const {
        return static_cast<int>(axes_.size());
    }
    PauliAxis axis(int party) const {
        return axes_[static_cast<std::size_t>(party)];
    }
    const std::vector<PauliAxis> &axes() const {
        return axes_;
    }
    std::string str() const;
    /// Position in the base-3 enumeration (x=0, y=1, z=2, party 0 most significant).
    std::uint64_t ordinal() const;

    auto operator<=>(const MeasurementSetting &) const = default;

  private:
    std::vector<PauliAxis> axes_;
};

/// All 3^n settings in ordinal order.
std::vector<MeasurementSetting> all_settings(int party_count);

enum class SamplingMode { multinomial, poissonized, exact };

std::string_view mode_name(SamplingMode mode);
SamplingMode parse_mode(std::string_view name);

/// Coincidence counts per setting. Outcome index bits follow the basis
/// convention (party 0 most significant); bit value 1 is eigenvalue -1.
///
/// In exact mode the table holds Born probabilities instead of counts and
/// shots_per_setting is 0.
struct CountsRecord {
    int party_count = 0;
    std::uint64_t shots_per_setting = 0;
    std::uint64_t seed = 0;
    SamplingMode mode = SamplingMode::multinomial;
    std::map<std::string, std::vector<double>> counts;

    const std::vector<double> &table(const MeasurementSetting &s) const;
    bool has(const MeasurementSetting &s) const {
        return counts.contains(s.str());
    }
};

/// Deterministic 64-bit seed for (seed, stream, index) via SplitMix64 mixing.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);
std::mt19937_64 task_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Born probabilities of every outcome for one setting.
std::vector<double> outcome_probabilities(const DensityMatrix &rho, const MeasurementSetting &setting);

/// Draws counts for each setting. Each setting uses its own engine seeded from
/// (seed, setting ordinal), so results do not depend on list order or workers.
CountsRecord simulate_counts(
    const DensityMatrix &rho,
    std::span<const MeasurementSetting> settings,
    std::uint64_t shots,
    std::uint64_t seed,
    SamplingMode mode,
    int workers = 0);

struct MomentsEstimate {
    PairMoments value;
    /// Standard deviation of each field over the resampled tables.
    PairMoments uncertainty;
    int resamples = 0;
};

/// Plug-in moment estimates for an ordered pair. Every setting whose steerer
/// and steered axes agree contributes; the remaining parties are marginalized.
MomentsEstimate estimate_moments(
    const CountsRecord &rec, PartyLabel steerer, PartyLabel steered, int resamples = 0, std::uint64_t seed = 0);

struct EstimateWithError {
    double value = 0.0;
    double uncertainty = 0.0;
    int resamples = 0;
};

/// Point estimate plus the standard deviation over `resamples` Poisson
/// resamplings of the raw counts (each count c replaced by Poisson(c)).
EstimateWithError estimate_steering_parameter(
    const CountsRecord &rec, PartyLabel steerer, PartyLabel steered, int resamples, std::uint64_t seed, int workers = 0);

/// Estimates for every ordered pair, with uncertainties filled in.
SteeringMatrix estimate_steering_matrix(const CountsRecord &rec, int resamples, std::uint64_t seed, int workers = 0);

/// Margin below the bound that shot noise alone produces in the plug-in
/// estimate. For uncorrelated outcomes with an unbiased steered marginal each
/// setting's term drops by var(B) * chi2_2 / N, N being the pooled count. The
/// margin takes the 99.9% point of chi2_2, var(B) = 1, and the smallest pooled
/// count in the record, summed over the three settings. Zero in exact mode.
double sampling_epsilon(const CountsRecord &rec);

/// Linear-inversion tomography over all 3^n settings followed by projection
/// onto the physical states.
DensityMatrix tomography_reconstruct(const CountsRecord &rec);

}  // namespace steershare

#endif
