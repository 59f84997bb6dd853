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

#include <cmath>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "steershare/states.h"
#include "test_util.h"

using namespace steershare;
using steershare::testing::literal_inferred_variance_sum;
using steershare::testing::random_density_matrix;
using steershare::testing::random_ket;

namespace {

constexpr PartyLabel A{0};
constexpr PartyLabel B{1};
constexpr PartyLabel C{2};

DensityMatrix w_like(double a, double b, double g) {
    return DensityMatrix(w_like_state(CoefficientTriple(a, b, g)));
}

double p(const SteeringMatrix &m, PartyLabel s, PartyLabel t) {
    return m.at(s, t).value;
}

DensityMatrix reduced_pair(const DensityMatrix &rho, PartyLabel s, PartyLabel t) {
    const PartyLabel keep[] = {s, t};
    return partial_trace(rho, keep);
}

}  // namespace

TEST(steering_parameter, w_state_anchor) {
    SteeringMatrix m = steering_matrix(DensityMatrix(w_n_state(3)));
    ASSERT_EQ(m.values().size(), 6u);
    for (const auto &v : m.values()) {
        ASSERT_NEAR(v.value, 16.0 / 9.0, 1e-9);
        ASSERT_EQ(v.threshold, 2.0);
    }
}

TEST(steering_parameter, w4_anchor) {
    SteeringMatrix m = steering_matrix(DensityMatrix(w_n_state(4)));
    ASSERT_EQ(m.values().size(), 12u);
    for (const auto &v : m.values()) {
        ASSERT_NEAR(v.value, 13.0 / 6.0, 1e-9);
    }
    ASSERT_EQ(classify_configuration(m).category, Category::unsteerable);
}

TEST(steering_parameter, monogamy_example_oracle) {
    // Reference values computed independently from the pair density matrices.
    SteeringMatrix m = steering_matrix(w_like(0.2, 0.4, std::sqrt(0.8)));
    ASSERT_NEAR(p(m, A, B), 1.104, 1e-10);
    ASSERT_NEAR(p(m, A, C), 1.872, 1e-10);
    ASSERT_NEAR(p(m, B, A), 1.128380952381, 1e-10);
    ASSERT_NEAR(p(m, B, C), 2.101180952381, 1e-10);
    ASSERT_NEAR(p(m, C, A), 2.277333333333, 1e-10);
    ASSERT_NEAR(p(m, C, B), 2.482133333333, 1e-10);
    SteeringConfiguration cfg = classify_configuration(m);
    ASSERT_EQ(cfg.category, Category::monogamous);
    ASSERT_EQ(cfg.arrows.size(), 3u);
    ASSERT_TRUE(cfg.has_arrow(A, B));
    ASSERT_TRUE(cfg.has_arrow(B, A));
    ASSERT_TRUE(cfg.has_arrow(A, C));
}

TEST(steering_parameter, shareability_example) {
    SteeringMatrix m = steering_matrix(w_like(0.5, 0.5, 1.0 / std::sqrt(2.0)));
    ASSERT_NEAR(p(m, B, A), p(m, C, A), 1e-9);
    ASSERT_NEAR(p(m, B, A), 5.0 / 3.0, 1e-10);
    ASSERT_NEAR(p(m, A, B), 1.5, 1e-10);
    ASSERT_NEAR(p(m, B, C), 13.0 / 6.0, 1e-10);
    SteeringConfiguration cfg = classify_configuration(m);
    ASSERT_EQ(cfg.category, Category::shareable);
    ASSERT_EQ(cfg.in_degree[0], 2);
}

TEST(steering_parameter, ghz_null_case) {
    for (double mu : {1.0 / std::sqrt(2.0), 0.7071068 / std::hypot(0.7071068, 0.7071068), 0.6, 0.28}) {
        SteeringMatrix m = steering_matrix(DensityMatrix(ghz_like_state(mu, std::sqrt(1.0 - mu * mu))));
        for (const auto &v : m.values()) {
            ASSERT_NEAR(v.value, 2.0, 1e-9);
        }
        ASSERT_EQ(classify_configuration(m).category, Category::unsteerable);
    }
}

TEST(steering_parameter, matches_literal_inferred_variance) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        DensityMatrix pair = random_density_matrix(2, rng);
        double closed = steering_parameter_from_moments(pair_moments(pair));
        ASSERT_NEAR(closed, literal_inferred_variance_sum(pair), 1e-10);
    }
    DensityMatrix rho = w_like(0.2, 0.4, std::sqrt(0.8));
    for (auto [s, t] : kSweepPairOrder) {
        double closed = steering_parameter(rho, PartyLabel{s}, PartyLabel{t}).value;
        ASSERT_NEAR(closed, literal_inferred_variance_sum(reduced_pair(rho, PartyLabel{s}, PartyLabel{t})), 1e-10);
    }
}

TEST(steering_parameter, optimal_coefficient_minimizes) {
    std::mt19937_64 rng(19);
    std::normal_distribution<double> g(0.0, 0.3);
    for (int trial = 0; trial < 20; ++trial) {
        DensityMatrix pair = random_density_matrix(2, rng);
        PairMoments moments = pair_moments(pair);
        double optimum = steering_parameter_from_moments(moments);
        for (int k = 0; k < 20; ++k) {
            double alphas[3];
            for (int i = 0; i < 3; ++i) {
                const auto &m = moments.settings[static_cast<std::size_t>(i)];
                double best = m.variance_steerer < kDegenerateVariance ? 0.0 : -m.covariance / m.variance_steerer;
                alphas[i] = best + g(rng);
            }
            ASSERT_GE(literal_inferred_variance_sum(pair, alphas), optimum - 1e-12);
        }
    }
}

TEST(steering_parameter, product_states_never_violate) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        DensityMatrix rho = tensor_product(random_density_matrix(1, rng), random_density_matrix(1, rng));
        ASSERT_GE(steering_parameter(rho, A, B).value, 2.0 - 1e-12);
        ASSERT_GE(steering_parameter(rho, B, A).value, 2.0 - 1e-12);
    }
}

TEST(steering_parameter, symmetric_under_party_relabeling) {
    // Swapping the qubits of a two-qubit state swaps the roles.
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        DensityMatrix rho = random_density_matrix(2, rng);
        const PartyLabel swapped[] = {B, A};
        DensityMatrix flipped = partial_trace(rho, swapped);
        ASSERT_NEAR(steering_parameter(rho, A, B).value, steering_parameter(flipped, B, A).value, 1e-12);
    }
}

TEST(steering_parameter, equal_coefficients_give_equal_values) {
    std::mt19937_64 rng(30);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int trial = 0; trial < 50; ++trial) {
        double a = u(rng);
        double b = std::sqrt((1.0 - a * a) / 2.0);
        // beta = gamma: A and B carry the same amplitude, so A <-> B is a symmetry.
        SteeringMatrix m = steering_matrix(w_like(a, b, b));
        ASSERT_NEAR(p(m, A, B), p(m, B, A), 1e-9);
        ASSERT_NEAR(p(m, A, C), p(m, B, C), 1e-9);
        ASSERT_NEAR(p(m, C, A), p(m, C, B), 1e-9);
    }
}

TEST(steering_parameter, non_decreasing_under_depolarizing) {
    for (const DensityMatrix &rho :
         {DensityMatrix(w_n_state(3)), w_like(0.2, 0.4, std::sqrt(0.8)), w_like(0.5, 0.5, 1.0 / std::sqrt(2.0))}) {
        SteeringMatrix prev = steering_matrix(rho);
        for (double q = 0.1; q <= 1.0001; q += 0.1) {
            SteeringMatrix next = steering_matrix(depolarize(rho, q));
            for (std::size_t k = 0; k < prev.values().size(); ++k) {
                ASSERT_GE(next.values()[k].value, prev.values()[k].value - 1e-10);
            }
            prev = next;
        }
        for (const auto &v : prev.values()) {
            ASSERT_NEAR(v.value, 3.0, 1e-10);
        }
    }
}

TEST(steering_parameter, two_setting_threshold) {
    SettingSet xz{PauliAxis::x, PauliAxis::z};
    SteeringValue v = steering_parameter(DensityMatrix(w_n_state(3)), A, B, xz);
    ASSERT_EQ(v.threshold, 1.0);
    ASSERT_NEAR(v.value, 11.0 / 9.0, 1e-10);
    ASSERT_THROW(steering_parameter(DensityMatrix(w_n_state(3)), A, A), std::invalid_argument);
    ASSERT_THROW(steering_parameter(DensityMatrix(w_n_state(3)), A, B, SettingSet{PauliAxis::x}), std::invalid_argument);
    ASSERT_THROW(
        steering_parameter(DensityMatrix(w_n_state(3)), A, B, SettingSet{PauliAxis::x, PauliAxis::x}),
        std::invalid_argument);
}

TEST(min_variance_bound, values) {
    ASSERT_EQ(min_variance_bound(3), 2.0);
    ASSERT_EQ(min_variance_bound(2), 1.0);
    ASSERT_THROW(min_variance_bound(4), std::invalid_argument);
}

TEST(min_variance_bound, attained_by_pure_qubits) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 10000; ++trial) {
        DensityMatrix q(random_ket(1, rng));
        double total = 0.0;
        for (PauliAxis a : {PauliAxis::x, PauliAxis::y, PauliAxis::z}) {
            const Placement pl[] = {{A, Observable::pauli(a)}};
            double m = expectation(q, pl);
            total += 1.0 - m * m;
        }
        ASSERT_NEAR(total, 2.0, 1e-10);
    }
}

TEST(degenerate_variance, falls_back_to_steered_variance) {
    // |0> on the steerer has zero z variance.
    DensityMatrix rho = tensor_product(DensityMatrix(Ket::basis(1, 0)), DensityMatrix::maximally_mixed(1));
    PairMoments m = pair_moments(rho);
    ASSERT_LT(m.settings[2].variance_steerer, kDegenerateVariance);
    ASSERT_NEAR(steering_parameter_from_moments(m), 3.0, 1e-12);
}

TEST(violation_rule, epsilon_and_sigma) {
    SteeringValue v{A, B, 1.9, 2.0, 0.05};
    ASSERT_TRUE(v.violated());
    ASSERT_TRUE(v.violated({0.0, 1.0}));
    ASSERT_FALSE(v.violated({0.0, 2.0}));
    ASSERT_FALSE(v.violated({0.1, 0.0}));
    SteeringValue at_bound{A, B, 2.0};
    ASSERT_FALSE(at_bound.violated());
    SteeringValue rounding{A, B, 2.0 - 4e-16};
    ASSERT_FALSE(rounding.violated());
    SteeringValue just_below{A, B, 2.0 - 1e-9};
    ASSERT_TRUE(just_below.violated());
}

TEST(steering_matrix, validates_and_sorts) {
    std::vector<SteeringValue> values{{B, A, 1.0}, {A, B, 2.5}};
    SteeringMatrix m(2, values);
    ASSERT_EQ(m.values()[0].steerer, A);
    ASSERT_EQ(m.at(B, A).value, 1.0);
    ASSERT_THROW(SteeringMatrix(2, {{A, B, 1.0}}), std::invalid_argument);
    ASSERT_THROW(SteeringMatrix(2, {{A, B, 1.0}, {A, B, 1.0}}), std::invalid_argument);
    ASSERT_THROW(SteeringMatrix(2, {{A, B, 1.0, 2.0}, {B, A, 1.0, 1.0}}), std::invalid_argument);
    ASSERT_THROW(SteeringMatrix(2, {{A, B, 1.0, 2.0, -0.1}, {B, A, 1.0}}), std::invalid_argument);
}

TEST(classify_configuration, categories) {
    auto make = [](std::initializer_list<std::pair<int, int>> arrows) {
        std::vector<SteeringValue> values;
        for (int s = 0; s < 3; ++s) {
            for (int t = 0; t < 3; ++t) {
                if (s == t) {
                    continue;
                }
                bool on = false;
                for (auto [x, y] : arrows) {
                    on = on || (x == s && y == t);
                }
                values.push_back({PartyLabel{s}, PartyLabel{t}, on ? 1.5 : 2.5});
            }
        }
        return SteeringMatrix(3, values);
    };
    ASSERT_EQ(classify_configuration(make({})).category, Category::unsteerable);
    ASSERT_EQ(classify_configuration(make({{0, 1}, {1, 0}, {0, 2}})).category, Category::monogamous);
    ASSERT_EQ(classify_configuration(make({{1, 0}, {2, 0}})).category, Category::shareable);
    SteeringConfiguration full = classify_configuration(make({{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}}));
    ASSERT_EQ(full.category, Category::fully_mutual);
    ASSERT_TRUE(full.shareable());
    ASSERT_EQ(category_name(Category::fully_mutual), "fully_mutual");
}

TEST(sweep_region_map, labels_and_grid) {
    SweepGrid grid;
    grid.resolution = 11;
    auto cells = sweep_region_map(grid, 1);
    ASSERT_EQ(cells.size(), 121u);
    // alpha outer, beta inner.
    ASSERT_NEAR(cells[2 * 11 + 4].alpha, 0.2, 1e-15);
    ASSERT_NEAR(cells[2 * 11 + 4].beta, 0.4, 1e-15);
    ASSERT_EQ(cells[2 * 11 + 4].category, Category::monogamous);
    ASSERT_EQ(cells[5 * 11 + 5].category, Category::shareable);
    ASSERT_FALSE(cells[10 * 11 + 10].valid);
    ASSERT_TRUE(cells[10 * 11 + 0].valid);
    ASSERT_NEAR(cells[0].gamma, 1.0, 1e-15);
}

TEST(sweep_region_map, identical_across_worker_counts) {
    SweepGrid grid;
    grid.resolution = 40;
    std::ostringstream a, b, c;
    write_sweep_csv(a, sweep_region_map(grid, 1));
    write_sweep_csv(b, sweep_region_map(grid, 3));
    write_sweep_csv(c, sweep_region_map(grid, 8));
    ASSERT_EQ(a.str(), b.str());
    ASSERT_EQ(a.str(), c.str());
    ASSERT_EQ(a.str().substr(0, a.str().find('\n')), "alpha,beta,gamma,P_AB,P_BA,P_AC,P_CA,P_BC,P_CB,category");
    ASSERT_NE(a.str().find(",invalid\n"), std::string::npos);
}
