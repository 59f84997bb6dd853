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

#include "steershare/steering.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "parallel.h"
#include "steershare/states.h"

namespace steershare {

namespace {

void validate_settings(const SettingSet &settings) {
    if (settings.size() < 2 || settings.size() > 3) {
        throw std::invalid_argument("steering criterion needs two or three measurement settings");
    }
    for (std::size_t i = 0; i < settings.size(); ++i) {
        for (std::size_t j = i + 1; j < settings.size(); ++j) {
            if (settings[i] == settings[j]) {
                throw std::invalid_argument("measurement settings must be distinct");
            }
        }
    }
}

}  // namespace

SettingSet default_settings() {
    return {PauliAxis::x, PauliAxis::y, PauliAxis::z};
}

SettingMoments complete_moments(PauliAxis axis, double mean_steerer, double mean_steered, double cross) {
    SettingMoments m;
    m.axis = axis;
    m.mean_steerer = mean_steerer;
    m.mean_steered = mean_steered;
    m.cross = cross;
    // Pauli outcomes are +-1, so the second moment is exactly 1.
    m.variance_steerer = std::max(0.0, 1.0 - mean_steerer * mean_steerer);
    m.variance_steered = std::max(0.0, 1.0 - mean_steered * mean_steered);
    m.covariance = cross - mean_steerer * mean_steered;
    return m;
}

PairMoments pair_moments(const DensityMatrix &rho_pair, const SettingSet &settings) {
    if (rho_pair.qubit_count() != 2) {
        throw std::invalid_argument("pair moments need a two-qubit state");
    }
    validate_settings(settings);
    const PartyLabel steerer{0};
    const PartyLabel steered{1};
    PairMoments out;
    for (PauliAxis axis : settings) {
        Observable op = Observable::pauli(axis);
        Placement a[] = {{steerer, op}};
        Placement b[] = {{steered, op}};
        Placement ab[] = {{steerer, op}, {steered, op}};
        out.settings.push_back(complete_moments(axis, expectation(rho_pair, a), expectation(rho_pair, b), expectation(rho_pair, ab)));
    }
    return out;
}

double min_variance_bound(int setting_count) {
    switch (setting_count) {
        case 2:
            return 1.0;
        case 3:
            return 2.0;
        default:
            throw std::invalid_argument("no variance bound for " + std::to_string(setting_count) + " settings");
    }
}

double steering_parameter_from_moments(const PairMoments &moments) {
    double total = 0.0;
    for (const auto &m : moments.settings) {
        if (m.variance_steerer < kDegenerateVariance) {
            total += m.variance_steered;
        } else {
            total += m.variance_steered - m.covariance * m.covariance / m.variance_steerer;
        }
    }
    return std::max(0.0, total);
}

SteeringValue steering_parameter(const DensityMatrix &rho, PartyLabel steerer, PartyLabel steered, const SettingSet &settings) {
    if (rho.qubit_count() < 2) {
        throw std::invalid_argument("steering needs at least two qubits");
    }
    if (steerer == steered) {
        throw std::invalid_argument("steerer and steered party must differ");
    }
    const PartyLabel keep[] = {steerer, steered};
    DensityMatrix pair = partial_trace(rho, keep);
    SteeringValue v;
    v.steerer = steerer;
    v.steered = steered;
    v.value = steering_parameter_from_moments(pair_moments(pair, settings));
    v.threshold = min_variance_bound(static_cast<int>(settings.size()));
    return v;
}

SteeringMatrix::SteeringMatrix(int party_count, std::vector<SteeringValue> values, SettingSet settings)
    : party_count_(party_count), values_(std::move(values)), settings_(std::move(settings)) {
    if (party_count_ < 2 || party_count_ > kMaxQubits) {
        throw std::invalid_argument("steering matrix needs 2 to " + std::to_string(kMaxQubits) + " parties");
    }
    const auto expected = static_cast<std::size_t>(party_count_ * (party_count_ - 1));
    if (values_.size() != expected) {
        throw std::invalid_argument("steering matrix needs " + std::to_string(expected) + " ordered pairs");
    }
    std::sort(values_.begin(), values_.end(), [](const SteeringValue &a, const SteeringValue &b) {
        return std::pair(a.steerer, a.steered) < std::pair(b.steerer, b.steered);
    });
    std::size_t k = 0;
    for (int i = 0; i < party_count_; ++i) {
        for (int j = 0; j < party_count_; ++j) {
            if (i == j) {
                continue;
            }
            const auto &v = values_[k++];
            if (v.steerer.index != i || v.steered.index != j) {
                throw std::invalid_argument("steering matrix is missing or duplicates an ordered pair");
            }
            if (v.threshold != values_.front().threshold) {
                throw std::invalid_argument("steering matrix thresholds must be uniform");
            }
            if (!(v.uncertainty >= 0.0)) {
                throw std::invalid_argument("steering value uncertainty must be nonnegative");
            }
        }
    }
}

const SteeringValue &SteeringMatrix::at(PartyLabel steerer, PartyLabel steered) const {
    for (const auto &v : values_) {
        if (v.steerer == steerer && v.steered == steered) {
            return v;
        }
    }
    throw std::out_of_range(std::string("no steering value for ") + steerer.name() + "->" + steered.name());
}

SteeringMatrix steering_matrix(const DensityMatrix &rho, const SettingSet &settings) {
    const int n = rho.qubit_count();
    if (n < 2) {
        throw std::invalid_argument("steering matrix needs 2 to " + std::to_string(kMaxQubits) + " qubits");
    }
    std::vector<SteeringValue> values;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                values.push_back(steering_parameter(rho, PartyLabel{i}, PartyLabel{j}, settings));
            }
        }
    }
    return SteeringMatrix(n, std::move(values), settings);
}

std::string_view category_name(Category c) {
    switch (c) {
        case Category::unsteerable:
            return "unsteerable";
        case Category::monogamous:
            return "monogamous";
        case Category::shareable:
            return "shareable";
        case Category::fully_mutual:
            return "fully_mutual";
    }
    return "unknown";
}

bool SteeringConfiguration::has_arrow(PartyLabel steerer, PartyLabel steered) const {
    return std::find(arrows.begin(), arrows.end(), std::pair(steerer, steered)) != arrows.end();
}

SteeringConfiguration classify_configuration(const SteeringMatrix &m, const ViolationRule &rule) {
    SteeringConfiguration out;
    out.in_degree.assign(static_cast<std::size_t>(m.party_count()), 0);
    for (const auto &v : m.values()) {
        if (v.violated(rule)) {
            out.arrows.emplace_back(v.steerer, v.steered);
            ++out.in_degree[static_cast<std::size_t>(v.steered.index)];
        }
    }
    const int max_in = *std::max_element(out.in_degree.begin(), out.in_degree.end());
    if (out.arrows.empty()) {
        out.category = Category::unsteerable;
    } else if (out.arrows.size() == m.values().size()) {
        out.category = Category::fully_mutual;
    } else if (max_in >= 2) {
        out.category = Category::shareable;
    } else {
        out.category = Category::monogamous;
    }
    return out;
}

namespace {

double grid_point(double lo, double hi, int i, int resolution) {
    if (resolution == 1) {
        return lo;
    }
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(resolution - 1);
}

SweepCell evaluate_cell(double alpha, double beta) {
    SweepCell cell;
    cell.alpha = alpha;
    cell.beta = beta;
    const double rest = 1.0 - alpha * alpha - beta * beta;
    if (alpha < 0.0 || beta < 0.0 || rest < -1e-12) {
        cell.valid = false;
        cell.gamma = std::numeric_limits<double>::quiet_NaN();
        cell.values.fill(std::numeric_limits<double>::quiet_NaN());
        return cell;
    }
    cell.valid = true;
    cell.gamma = std::sqrt(std::max(0.0, rest));
    DensityMatrix rho(w_like_state(CoefficientTriple::normalized(alpha, beta, cell.gamma)));
    SteeringMatrix m = steering_matrix(rho);
    for (std::size_t k = 0; k < kSweepPairOrder.size(); ++k) {
        auto [i, j] = kSweepPairOrder[k];
        cell.values[k] = m.at(PartyLabel{i}, PartyLabel{j}).value;
    }
    cell.category = classify_configuration(m).category;
    return cell;
}

}  // namespace

std::vector<SweepCell> sweep_region_map(const SweepGrid &grid, int workers) {
    if (grid.resolution <= 0) {
        throw std::invalid_argument("sweep resolution must be positive");
    }
    if (!(grid.alpha_min <= grid.alpha_max) || !(grid.beta_min <= grid.beta_max)) {
        throw std::invalid_argument("sweep ranges must be ordered");
    }
    const auto res = static_cast<std::size_t>(grid.resolution);
    std::vector<SweepCell> cells(res * res);
    detail::parallel_for(cells.size(), workers, [&](std::size_t k) {
        const int ia = static_cast<int>(k / res);
        const int ib = static_cast<int>(k % res);
        cells[k] = evaluate_cell(
            grid_point(grid.alpha_min, grid.alpha_max, ia, grid.resolution),
            grid_point(grid.beta_min, grid.beta_max, ib, grid.resolution));
    });
    return cells;
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepCell> &cells) {
    out << "alpha,beta,gamma,P_AB,P_BA,P_AC,P_CA,P_BC,P_CB,category\n";
    char buf[64];
    auto put = [&](double x) {
        if (std::isnan(x)) {
            out << "nan";
        } else {
            std::snprintf(buf, sizeof(buf), "%.12g", x);
            out << buf;
        }
    };
    for (const auto &c : cells) {
        put(c.alpha);
        out << ',';
        put(c.beta);
        out << ',';
        put(c.gamma);
        for (double v : c.values) {
            out << ',';
            put(v);
        }
        out << ',' << (c.valid ? category_name(c.category) : std::string_view("invalid")) << '\n';
    }
}

}  // namespace steershare
