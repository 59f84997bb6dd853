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

#include "steershare/states.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace steershare {

namespace {

constexpr double kCoefficientTolerance = 1e-10;
constexpr double kDegenerateTolerance = 1e-12;

double to_radians(double deg) {
    return deg * std::numbers::pi / 180.0;
}

double to_degrees(double rad) {
    return rad * 180.0 / std::numbers::pi;
}

// State on the register grown so far. Qubit 0 is the most significant bit.
struct Register {
    int qubits;
    CVector amps;
};

void apply_single(Register &reg, int target, const Eigen::Matrix2cd &u) {
    const std::size_t dim = std::size_t{1} << reg.qubits;
    const std::size_t mask = std::size_t{1} << (reg.qubits - 1 - target);
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & mask) {
            continue;
        }
        auto i0 = static_cast<Eigen::Index>(i);
        auto i1 = static_cast<Eigen::Index>(i | mask);
        Complex a0 = reg.amps(i0);
        Complex a1 = reg.amps(i1);
        reg.amps(i0) = u(0, 0) * a0 + u(0, 1) * a1;
        reg.amps(i1) = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void apply_controlled(Register &reg, int control, int control_value, int target, const Eigen::Matrix2cd &u) {
    const std::size_t dim = std::size_t{1} << reg.qubits;
    const std::size_t cmask = std::size_t{1} << (reg.qubits - 1 - control);
    const std::size_t tmask = std::size_t{1} << (reg.qubits - 1 - target);
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & tmask) || (((i & cmask) != 0) != (control_value != 0))) {
            continue;
        }
        auto i0 = static_cast<Eigen::Index>(i);
        auto i1 = static_cast<Eigen::Index>(i | tmask);
        Complex a0 = reg.amps(i0);
        Complex a1 = reg.amps(i1);
        reg.amps(i0) = u(0, 0) * a0 + u(0, 1) * a1;
        reg.amps(i1) = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

// Isometry appending a new least-significant qubit whose value is the
// complement of `source`: |s> -> |s>|1 - s>.
void append_anticorrelated(Register &reg, int source) {
    const std::size_t dim = std::size_t{1} << reg.qubits;
    const std::size_t smask = std::size_t{1} << (reg.qubits - 1 - source);
    CVector grown = CVector::Zero(static_cast<Eigen::Index>(2 * dim));
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t new_bit = (i & smask) ? 0u : 1u;
        grown(static_cast<Eigen::Index>((i << 1) | new_bit)) = reg.amps(static_cast<Eigen::Index>(i));
    }
    reg.qubits += 1;
    reg.amps = std::move(grown);
}

Eigen::Matrix2cd pauli_x_matrix() {
    Eigen::Matrix2cd m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

}  // namespace

CoefficientTriple::CoefficientTriple(double alpha, double beta, double gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma) {
    double norm2 = alpha * alpha + beta * beta + gamma * gamma;
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kCoefficientTolerance) {
        throw std::invalid_argument(
            "coefficients are not normalized: alpha^2 + beta^2 + gamma^2 = " + std::to_string(norm2));
    }
}

CoefficientTriple CoefficientTriple::normalized(double alpha, double beta, double gamma) {
    double norm = std::sqrt(alpha * alpha + beta * beta + gamma * gamma);
    if (!std::isfinite(norm) || norm == 0.0) {
        throw std::invalid_argument("coefficients cannot be normalized");
    }
    return CoefficientTriple(alpha / norm, beta / norm, gamma / norm);
}

PrepParams PrepParams::reduced() const {
    auto wrap = [](double deg) {
        double r = std::fmod(deg, 180.0);
        return r < 0.0 ? r + 180.0 : r;
    };
    return PrepParams{wrap(theta1_deg), wrap(theta2_deg)};
}

Ket w_like_state(const CoefficientTriple &c) {
    CVector amps = CVector::Zero(8);
    amps(1) = c.alpha();
    amps(2) = c.beta();
    amps(4) = c.gamma();
    amps.normalize();
    return Ket(std::move(amps));
}

Ket w_n_state(int n) {
    if (n < 2 || n > kMaxQubits) {
        throw std::invalid_argument("W_N is supported for 2 <= N <= " + std::to_string(kMaxQubits));
    }
    const auto dim = Eigen::Index{1} << n;
    CVector amps = CVector::Zero(dim);
    for (int q = 0; q < n; ++q) {
        amps(Eigen::Index{1} << q) = 1.0 / std::sqrt(static_cast<double>(n));
    }
    return Ket(std::move(amps));
}

Ket ghz_like_state(double mu, double nu) {
    double norm2 = mu * mu + nu * nu;
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kCoefficientTolerance) {
        throw std::invalid_argument("GHZ-like coefficients are not normalized: mu^2 + nu^2 = " + std::to_string(norm2));
    }
    CVector amps = CVector::Zero(8);
    amps(6) = mu;
    amps(1) = nu;
    amps.normalize();
    return Ket(std::move(amps));
}

CoefficientTriple hwp_to_coefficients(const PrepParams &p) {
    double t1 = 2.0 * to_radians(p.theta1_deg);
    double t2 = 2.0 * to_radians(p.theta2_deg);
    return CoefficientTriple::normalized(std::sin(t1), std::cos(t1) * std::cos(t2), std::cos(t1) * std::sin(t2));
}

HwpInversion coefficients_to_hwp(const CoefficientTriple &c) {
    if (c.alpha() < 0.0 || c.beta() < 0.0 || c.gamma() < 0.0) {
        throw std::invalid_argument("wave-plate inversion needs nonnegative coefficients");
    }
    HwpInversion out;
    out.params.theta1_deg = 0.5 * to_degrees(std::asin(std::min(c.alpha(), 1.0)));
    if (std::hypot(c.beta(), c.gamma()) < kDegenerateTolerance) {
        out.params.theta2_deg = 0.0;
        out.theta2_degenerate = true;
    } else {
        out.params.theta2_deg = 0.5 * to_degrees(std::atan2(c.gamma(), c.beta()));
    }
    return out;
}

Eigen::Matrix2cd half_wave_plate(double theta_deg) {
    double c = std::cos(2.0 * to_radians(theta_deg));
    double s = std::sin(2.0 * to_radians(theta_deg));
    Eigen::Matrix2cd m;
    m << c, s, s, -c;
    return m;
}

Ket pipeline_state(const PrepParams &p) {
    constexpr int polarization = 0;
    constexpr int path = 1;
    constexpr int up = 0;
    constexpr int down = 1;

    Register reg{1, CVector::Zero(2)};
    reg.amps(0) = 1.0;  // |H>

    // HWP1: |H> -> cos 2t1 |H> + sin 2t1 |V>.
    apply_single(reg, polarization, half_wave_plate(p.theta1_deg));
    // BD1: H goes to the down path, V to the up path.
    append_anticorrelated(reg, polarization);
    // 45 degree plate on the up path returns its polarization to H.
    apply_controlled(reg, path, up, polarization, half_wave_plate(45.0));
    // SLM1: down path gets +l, up path gets -l.
    append_anticorrelated(reg, path);
    // HWP2 acts on the down path only.
    apply_controlled(reg, path, down, polarization, half_wave_plate(p.theta2_deg));
    // BD2: V polarization is displaced by one path (D -> U).
    apply_controlled(reg, polarization, 1, path, pauli_x_matrix());

    reg.amps.normalize();
    return Ket(std::move(reg.amps));
}

DensityMatrix depolarize(const DensityMatrix &rho, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("depolarizing strength must lie in [0, 1]");
    }
    const auto dim = static_cast<Eigen::Index>(rho.dimension());
    return DensityMatrix((1.0 - p) * rho.entries() + p * CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

}  // namespace steershare
