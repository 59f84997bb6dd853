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

#ifndef STEERSHARE_STEERING_H
#define STEERSHARE_STEERING_H

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "steershare/linalg.h"

namespace steershare {

/// Measurement axes used on both sides of every pair. Two or three distinct
/// Pauli axes.
using SettingSet = std::vector<PauliAxis>;

SettingSet default_settings();

/// First and second moments for one aligned setting (A_i on the steerer,
/// B_i on the steered party).
struct SettingMoments {
    PauliAxis axis = PauliAxis::z;
    double mean_steerer = 0.0;
    double mean_steered = 0.0;
    double cross = 0.0;
    double variance_steerer = 1.0;
    double variance_steered = 1.0;
    double covariance = 0.0;
};

struct PairMoments {
    std::vector<SettingMoments> settings;
};

/// Moments of a two-qubit state; qubit 0 is the steerer.
PairMoments pair_moments(const DensityMatrix &rho_pair, const SettingSet &settings = default_settings());

/// Fills the derived fields (variances from the means, covariance) of a
/// moment record whose means and cross term are known.
SettingMoments complete_moments(PauliAxis axis, double mean_steerer, double mean_steered, double cross);

/// Minimum of sum_i variance(B_i) over single-qubit states: 2 for three
/// Pauli settings, 1 for two.
double min_variance_bound(int setting_count);

/// Below this the steerer's variance counts as zero and the optimal
/// coefficient is taken as 0.
inline constexpr double kDegenerateVariance = 1e-12;

/// sum_i [var(B_i) - C(A_i, B_i)^2 / var(A_i)], the inferred-variance sum at
/// the optimal linear estimate alpha_i = -C(A_i, B_i) / var(A_i).
double steering_parameter_from_moments(const PairMoments &moments);

/// Values this close to the bound count as on it, so rounding in the
/// moments cannot create an arrow.
inline constexpr double kBoundSlack = 1e-12;

/// Decision rule for calling a violation:
/// value + sigma_k * uncertainty < threshold - epsilon - kBoundSlack.
struct ViolationRule {
    double epsilon = 0.0;
    double sigma_k = 0.0;
};

struct SteeringValue {
    PartyLabel steerer;
    PartyLabel steered;
    double value = 0.0;
    double threshold = 2.0;
    double uncertainty = 0.0;

    bool violated(const ViolationRule &rule = {}) const {
        return value + rule.sigma_k * uncertainty < threshold - rule.epsilon - kBoundSlack;
    }
};

SteeringValue steering_parameter(
    const DensityMatrix &rho, PartyLabel steerer, PartyLabel steered, const SettingSet &settings = default_settings());

/// All n(n-1) ordered-pair steering values, sorted by (steerer, steered).
class SteeringMatrix {
  public:
    /// Validates completeness, ordering, and a uniform threshold; sorts the
    /// input into canonical order.
    SteeringMatrix(int party_count, std::vector<SteeringValue> values, SettingSet settings = default_settings());

    int party_count() const {
        return party_count_;
    }
    double threshold() const {
        return values_.front().threshold;
    }
    const std::vector<SteeringValue> &values() const {
        return values_;
    }
    const SettingSet &settings() const {
        return settings_;
    }
    const SteeringValue &at(PartyLabel steerer, PartyLabel steered) const;

  private:
    int party_count_;
    std::vector<SteeringValue> values_;
    SettingSet settings_;
};

SteeringMatrix steering_matrix(const DensityMatrix &rho, const SettingSet &settings = default_settings());

enum class Category { unsteerable, monogamous, shareable, fully_mutual };

std::string_view category_name(Category c);

struct SteeringConfiguration {
    /// (steerer, steered) pairs, in steering-matrix order.
    std::vector<std::pair<PartyLabel, PartyLabel>> arrows;
    std::vector<int> in_degree;
    Category category = Category::unsteerable;

    bool has_arrow(PartyLabel steerer, PartyLabel steered) const;
    /// True for both shareable and fully_mutual: some party is steered by two others.
    bool shareable() const {
        return category == Category::shareable || category == Category::fully_mutual;
    }
};

SteeringConfiguration classify_configuration(const SteeringMatrix &m, const ViolationRule &rule = {});

/// Region-map sweep over the (alpha, beta) plane of W-like states, with
/// gamma = sqrt(1 - alpha^2 - beta^2).
struct SweepGrid {
    double alpha_min = 0.0;
    double alpha_max = 1.0;
    double beta_min = 0.0;
    double beta_max = 1.0;
    int resolution = 200;
};

/// Column order of the six values in a sweep cell and in the CSV output.
inline constexpr std::array<std::pair<int, int>, 6> kSweepPairOrder{{
    {0, 1},
    {1, 0},
    {0, 2},
    {2, 0},
    {1, 2},
    {2, 1},
}};

struct SweepCell {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    bool valid = false;
    /// P_AB, P_BA, P_AC, P_CA, P_BC, P_CB.
    std::array<double, 6> values{};
    Category category = Category::unsteerable;
};

/// Row-major over alpha (outer) then beta. Identical output for any worker
/// count; `workers` <= 0 means hardware concurrency.
std::vector<SweepCell> sweep_region_map(const SweepGrid &grid, int workers = 0);

/// Writes the header and one line per cell. Invalid cells carry "nan" values
/// and the category "invalid".
void write_sweep_csv(std::ostream &out, const std::vector<SweepCell> &cells);

}  // namespace steershare

#endif
