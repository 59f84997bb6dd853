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

#ifndef STEERSHARE_STATES_H
#define STEERSHARE_STATES_H

#include "steershare/linalg.h"

namespace steershare {

/// Real amplitudes of the three single-excitation terms
/// alpha|001> + beta|010> + gamma|100>.
///
/// Components may be negative (wave-plate settings past 45 degrees produce
/// sign flips), but the triple must be normalized within 1e-10.
class CoefficientTriple {
  public:
    CoefficientTriple(double alpha, double beta, double gamma);

    /// Rescales an approximately normalized triple. Used for user input
    /// typed with a handful of digits.
    static CoefficientTriple normalized(double alpha, double beta, double gamma);

    double alpha() const {
        return alpha_;
    }
    double beta() const {
        return beta_;
    }
    double gamma() const {
        return gamma_;
    }

  private:
    double alpha_;
    double beta_;
    double gamma_;
};

/// Half-wave plate angles in degrees. HWP1 sets the initial polarization
/// superposition; HWP2 splits the down-path branch.
struct PrepParams {
    double theta1_deg = 0.0;
    double theta2_deg = 0.0;

    /// Both angles reduced into [0, 180).
    PrepParams reduced() const;
};

struct HwpInversion {
    PrepParams params;
    /// beta = gamma = 0 (within 1e-12) leaves theta2 undetermined; it is then reported as 0.
    bool theta2_degenerate = false;
};

Ket w_like_state(const CoefficientTriple &c);

/// Equal superposition of the N single-excitation basis states, 2 <= N <= 4.
Ket w_n_state(int n);

/// mu|110> + nu|001>: the two-branch state produced before the second beam
/// displacer, in (polarization, path, OAM) encoding.
Ket ghz_like_state(double mu, double nu);

/// alpha = sin 2t1, beta = cos 2t1 cos 2t2, gamma = cos 2t1 sin 2t2.
CoefficientTriple hwp_to_coefficients(const PrepParams &p);

/// Inverse of hwp_to_coefficients for nonnegative triples; angles in [0, 45].
HwpInversion coefficients_to_hwp(const CoefficientTriple &c);

/// Runs the optical preparation element by element on a growing
/// polarization/path/OAM register:
///
///     HWP1 -> BD1 -> HWP(45) on up path -> SLM1 -> HWP2 on down path -> BD2
///
/// Encoding: H=0 V=1 (qubit A), U=0 D=1 (qubit B), +l=0 -l=1 (qubit C).
Ket pipeline_state(const PrepParams &p);

/// Polarization state after a half-wave plate at `theta_deg` acting on |H>:
/// cos 2t |H> + sin 2t |V>. The full plate matrix is [[c, s], [s, -c]].
Eigen::Matrix2cd half_wave_plate(double theta_deg);

/// (1 - p) rho + p I / 2^n.
DensityMatrix depolarize(const DensityMatrix &rho, double p);

}  // namespace steershare

#endif
