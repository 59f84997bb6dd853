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

#include "steershare/linalg.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace steershare {

namespace {

double max_hermitian_deviation(const CMatrix &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

PartyLabel parse_party(char name) {
    if (name < 'A' || name >= 'A' + kMaxQubits) {
        throw std::invalid_argument(std::string("unknown party '") + name + "'");
    }
    return PartyLabel{name - 'A'};
}

char axis_name(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::x:
            return 'x';
        case PauliAxis::y:
            return 'y';
        case PauliAxis::z:
            return 'z';
    }
    return '?';
}

PauliAxis parse_axis(char name) {
    switch (name) {
        case 'x':
            return PauliAxis::x;
        case 'y':
            return PauliAxis::y;
        case 'z':
            return PauliAxis::z;
        default:
            throw std::invalid_argument(std::string("invalid measurement axis '") + name + "'");
    }
}

int qubits_for_dimension(Eigen::Index dimension) {
    for (int n = 1; n <= kMaxQubits; ++n) {
        if (dimension == (Eigen::Index{1} << n)) {
            return n;
        }
    }
    throw std::invalid_argument(
        "dimension " + std::to_string(dimension) + " is not 2^n for 1 <= n <= " + std::to_string(kMaxQubits));
}

Ket::Ket(CVector amplitudes) : qubit_count_(qubits_for_dimension(amplitudes.size())), amplitudes_(std::move(amplitudes)) {
    double norm = amplitudes_.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kKetNormTolerance) {
        throw std::invalid_argument("ket norm " + std::to_string(norm) + " is not 1");
    }
}

Ket Ket::basis(int qubit_count, std::size_t index) {
    if (qubit_count < 1 || qubit_count > kMaxQubits) {
        throw std::invalid_argument("qubit count out of range");
    }
    std::size_t dim = std::size_t{1} << qubit_count;
    if (index >= dim) {
        throw std::invalid_argument("basis index out of range");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return Ket(std::move(v));
}

DensityMatrix::DensityMatrix(CMatrix entries) : qubit_count_(0), entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
    qubit_count_ = qubits_for_dimension(entries_.rows());
    if (!entries_.allFinite()) {
        throw std::invalid_argument("density matrix has non-finite entries");
    }
    double herm = max_hermitian_deviation(entries_);
    if (herm > kHermitianTolerance) {
        throw std::invalid_argument("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    double trace = entries_.trace().real();
    if (std::abs(trace - 1.0) > kTraceTolerance) {
        throw std::invalid_argument("density matrix trace " + std::to_string(trace) + " is not 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
    double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < kPhysicalityTolerance) {
        throw std::invalid_argument("density matrix has negative eigenvalue " + std::to_string(min_eig));
    }
}

DensityMatrix::DensityMatrix(const Ket &ket)
    : qubit_count_(ket.qubit_count()), entries_(ket.amplitudes() * ket.amplitudes().adjoint()) {
}

DensityMatrix DensityMatrix::maximally_mixed(int qubit_count) {
    if (qubit_count < 1 || qubit_count > kMaxQubits) {
        throw std::invalid_argument("qubit count out of range");
    }
    auto dim = Eigen::Index{1} << qubit_count;
    return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

Observable::Observable(const Eigen::Matrix2cd &entries) : entries_(entries) {
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("observable is not Hermitian");
    }
}

Observable Observable::pauli(PauliAxis axis) {
    Eigen::Matrix2cd m;
    const Complex i(0.0, 1.0);
    switch (axis) {
        case PauliAxis::x:
            m << 0.0, 1.0, 1.0, 0.0;
            break;
        case PauliAxis::y:
            m << 0.0, -i, i, 0.0;
            break;
        case PauliAxis::z:
            m << 1.0, 0.0, 0.0, -1.0;
            break;
    }
    return Observable(m);
}

Observable Observable::identity() {
    return Observable(Eigen::Matrix2cd::Identity());
}

CMatrix kronecker(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

Ket tensor_product(const Ket &x, const Ket &y) {
    if (x.qubit_count() + y.qubit_count() > kMaxQubits) {
        throw std::invalid_argument("tensor product exceeds " + std::to_string(kMaxQubits) + " qubits");
    }
    CVector out = kronecker(x.amplitudes(), y.amplitudes());
    out.normalize();
    return Ket(std::move(out));
}

DensityMatrix tensor_product(const DensityMatrix &x, const DensityMatrix &y) {
    if (x.qubit_count() + y.qubit_count() > kMaxQubits) {
        throw std::invalid_argument("tensor product exceeds " + std::to_string(kMaxQubits) + " qubits");
    }
    return DensityMatrix(kronecker(x.entries(), y.entries()));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const PartyLabel> keep) {
    const int n = rho.qubit_count();
    if (keep.empty()) {
        throw std::invalid_argument("partial trace needs at least one kept party");
    }
    std::vector<bool> kept(static_cast<std::size_t>(n), false);
    for (const auto &p : keep) {
        if (p.index < 0 || p.index >= n) {
            throw std::invalid_argument(std::string("party ") + p.name() + " out of range");
        }
        if (kept[static_cast<std::size_t>(p.index)]) {
            throw std::invalid_argument(std::string("party ") + p.name() + " listed twice");
        }
        kept[static_cast<std::size_t>(p.index)] = true;
    }
    std::vector<int> traced;
    for (int q = 0; q < n; ++q) {
        if (!kept[static_cast<std::size_t>(q)]) {
            traced.push_back(q);
        }
    }

    const int k = static_cast<int>(keep.size());
    const std::size_t out_dim = std::size_t{1} << k;
    const std::size_t env_dim = std::size_t{1} << traced.size();
    // Builds the full index from kept bits (in `keep` order) and traced bits.
    auto full_index = [&](std::size_t kept_bits, std::size_t env_bits) {
        std::size_t idx = 0;
        for (int j = 0; j < k; ++j) {
            std::size_t bit = (kept_bits >> (k - 1 - j)) & 1u;
            idx |= bit << (n - 1 - keep[static_cast<std::size_t>(j)].index);
        }
        for (std::size_t j = 0; j < traced.size(); ++j) {
            std::size_t bit = (env_bits >> (traced.size() - 1 - j)) & 1u;
            idx |= bit << (n - 1 - traced[j]);
        }
        return idx;
    };

    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(out_dim));
    for (std::size_t r = 0; r < out_dim; ++r) {
        for (std::size_t c = 0; c < out_dim; ++c) {
            Complex acc = 0.0;
            for (std::size_t e = 0; e < env_dim; ++e) {
                acc += rho(full_index(r, e), full_index(c, e));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
        }
    }
    return DensityMatrix(std::move(out));
}

double expectation(const DensityMatrix &rho, std::span<const Placement> placements) {
    const int n = rho.qubit_count();
    if (placements.empty()) {
        throw std::invalid_argument("expectation needs at least one placed observable");
    }
    std::vector<const Observable *> slots(static_cast<std::size_t>(n), nullptr);
    for (const auto &pl : placements) {
        if (pl.party.index < 0 || pl.party.index >= n) {
            throw std::invalid_argument(std::string("party ") + pl.party.name() + " out of range");
        }
        auto &slot = slots[static_cast<std::size_t>(pl.party.index)];
        if (slot != nullptr) {
            throw std::invalid_argument(std::string("party ") + pl.party.name() + " placed twice");
        }
        slot = &pl.observable;
    }
    CMatrix op = CMatrix::Ones(1, 1);
    for (const auto *slot : slots) {
        CMatrix local = slot ? CMatrix(slot->entries()) : CMatrix(CMatrix::Identity(2, 2));
        op = kronecker(op, local);
    }
    return (rho.entries() * op).trace().real();
}

CMatrix hermitian_sqrt(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
    Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

double fidelity(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("fidelity of states with different dimensions");
    }
    CMatrix root_a = hermitian_sqrt(a.entries());
    CMatrix inner = root_a * b.entries() * root_a;
    inner = (inner + inner.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(inner, Eigen::EigenvaluesOnly);
    double f = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(f, 0.0, 1.0);
}

double squared_overlap(const Ket &x, const Ket &y) {
    if (x.dimension() != y.dimension()) {
        throw std::invalid_argument("overlap of kets with different dimensions");
    }
    return std::norm(x.amplitudes().dot(y.amplitudes()));
}

DensityMatrix mixture(double p, const DensityMatrix &a, const DensityMatrix &b) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("mixture weight must lie in [0, 1]");
    }
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("mixture of states with different dimensions");
    }
    return DensityMatrix(p * a.entries() + (1.0 - p) * b.entries());
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd &values) {
    std::vector<double> sorted(values.data(), values.data() + values.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double shift = 0.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        cumulative += sorted[j];
        double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (sorted[j] - candidate > 0.0) {
            shift = candidate;
        }
    }
    return (values.array() - shift).cwiseMax(0.0).matrix();
}

DensityMatrix nearest_physical_state(const CMatrix &hermitian) {
    if (hermitian.rows() != hermitian.cols()) {
        throw std::invalid_argument("matrix must be square");
    }
    qubits_for_dimension(hermitian.rows());
    if (max_hermitian_deviation(hermitian) > 1e-8) {
        throw std::invalid_argument("matrix is not Hermitian");
    }
    double trace = hermitian.trace().real();
    if (std::abs(trace - 1.0) > 1e-6) {
        throw std::invalid_argument("matrix trace " + std::to_string(trace) + " deviates from 1 beyond 1e-6");
    }
    CMatrix sym = (hermitian + hermitian.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    Eigen::VectorXd projected = project_to_simplex(solver.eigenvalues());
    CMatrix out = solver.eigenvectors() * projected.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
    out = (out + out.adjoint()) * 0.5;
    return DensityMatrix(std::move(out));
}

}  // namespace steershare
