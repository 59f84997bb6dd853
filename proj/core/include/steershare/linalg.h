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

#ifndef STEERSHARE_LINALG_H
#define STEERSHARE_LINALG_H

#include <Eigen/Dense>
#include <complex>
#include <compare>
#include <cstddef>
#include <span>
#include <string>

namespace steershare {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Largest register handled anywhere in the library (dimension 16).
inline constexpr int kMaxQubits = 4;

inline constexpr double kKetNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
/// Smallest eigenvalue still accepted as physical. Reconstructed states carry
/// statistical noise, so exact positivity is not demanded.
inline constexpr double kPhysicalityTolerance = -1e-8;

/// Names one qubit of a register. Party 0 is the most significant bit of a
/// basis index and is displayed as "A", party 1 as "B", and so on.
struct PartyLabel {
    int index = 0;

    char name() const {
        return static_cast<char>('A' + index);
    }
    auto operator<=>(const PartyLabel &) const = default;
};

/// Parses a single party letter ("A".."D").
PartyLabel parse_party(char name);

enum class PauliAxis { x, y, z };

char axis_name(PauliAxis axis);
PauliAxis parse_axis(char name);

/// Pure state of 1 to kMaxQubits qubits with unit norm.
class Ket {
  public:
    explicit Ket(CVector amplitudes);

    static Ket basis(int qubit_count, std::size_t index);

    int qubit_count() const {
        return qubit_count_;
    }
    std::size_t dimension() const {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    const CVector &amplitudes() const {
        return amplitudes_;
    }
    Complex operator[](std::size_t index) const {
        return amplitudes_(static_cast<Eigen::Index>(index));
    }

  private:
    int qubit_count_;
    CVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator on 1 to kMaxQubits
/// qubits. Construction validates all three properties.
class DensityMatrix {
  public:
    explicit DensityMatrix(CMatrix entries);
    explicit DensityMatrix(const Ket &ket);

    static DensityMatrix maximally_mixed(int qubit_count);

    int qubit_count() const {
        return qubit_count_;
    }
    std::size_t dimension() const {
        return static_cast<std::size_t>(entries_.rows());
    }
    const CMatrix &entries() const {
        return entries_;
    }
    Complex operator()(std::size_t row, std::size_t col) const {
        return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

  private:
    int qubit_count_;
    CMatrix entries_;
};

/// Single-qubit Hermitian observable.
class Observable {
  public:
    explicit Observable(const Eigen::Matrix2cd &entries);

    static Observable pauli(PauliAxis axis);
    static Observable identity();

    const Eigen::Matrix2cd &entries() const {
        return entries_;
    }

  private:
    Eigen::Matrix2cd entries_;
};

struct Placement {
    PartyLabel party;
    Observable observable;
};

/// Number of qubits for a dimension that must be 2^n with 1 <= n <= kMaxQubits.
/// Throws std::invalid_argument otherwise.
int qubits_for_dimension(Eigen::Index dimension);

/// Kronecker product of two dense matrices (vectors are n x 1 matrices).
CMatrix kronecker(const CMatrix &a, const CMatrix &b);

/// Kronecker composition; x's parties stay most significant.
Ket tensor_product(const Ket &x, const Ket &y);
DensityMatrix tensor_product(const DensityMatrix &x, const DensityMatrix &y);

/// Reduced state over `keep`, in the listed order.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const PartyLabel> keep);

/// Tr(rho * O) where O places each observable on its party and identity elsewhere.
double expectation(const DensityMatrix &rho, std::span<const Placement> placements);

/// Root fidelity Tr sqrt(sqrt(a) b sqrt(a)). Equals |<psi|phi>| for pure inputs.
double fidelity(const DensityMatrix &a, const DensityMatrix &b);

/// |<x|y>|^2. Global phase is irrelevant.
double squared_overlap(const Ket &x, const Ket &y);

/// p*a + (1-p)*b.
DensityMatrix mixture(double p, const DensityMatrix &a, const DensityMatrix &b);

/// Closest density matrix in Frobenius norm to a Hermitian unit-trace matrix:
/// the spectrum is projected onto the probability simplex, eigenvectors kept.
DensityMatrix nearest_physical_state(const CMatrix &hermitian);

/// Euclidean projection of a real vector onto the probability simplex.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd &values);

/// Square root of a Hermitian positive semidefinite matrix through its
/// eigendecomposition; eigenvalues below zero are clipped.
CMatrix hermitian_sqrt(const CMatrix &m);

}  // namespace steershare

#endif
