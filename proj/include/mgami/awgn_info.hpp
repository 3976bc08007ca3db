// SPDX-License-Identifier: Apache-2.0
//
// mgami: average mutual information of finite-alphabet signaling over
// mixture-gamma fading channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MGAMI_AWGN_INFO_HPP
#define MGAMI_AWGN_INFO_HPP

#include "mgami/constellation.hpp"

#include <span>

namespace mgami {

// Scalar channel Y = sqrt(snr) S + Z, Z ~ CN(0, 1), S uniform on the alphabet.
//
// Units: mutual_information() reports bits. information_gap_nats(), mmse()
// and everything derived from them (Mellin transform, derivative check) use
// nats, the convention under which d I / d snr = mmse holds exactly.
//
// Evaluation: alphabets that are a Cartesian product of two real sets (QAM,
// BPSK, possibly after a 45 degree rotation) split into two independent real
// integrals, each done by adaptive Gauss–Kronrod with cuts at the decision
// boundaries. Other alphabets use the tensor Gauss–Hermite rule at low SNR and
// nested adaptive integration over the complex plane otherwise.

/// I(snr) in bits, in [0, log2 M]. Throws argument_error for snr < 0 or non-finite.
double mutual_information(const Constellation& cons, double snr);

/// log(M) - I(snr) in nats, computed without cancellation so it stays
/// relatively accurate when I is close to log M.
double information_gap_nats(const Constellation& cons, double snr);

/// E|S - E[S|Y]|^2, in (0, 1]. Values that would underflow are clamped to 1e-320.
double mmse(const Constellation& cons, double snr);

/// The complex-plane integral for I(snr) (bits) evaluated with a tensor-product
/// Gauss–Hermite rule of the given order per real dimension. Accurate at low
/// SNR only; its error grows once sqrt(snr) d_min is of order one.
double mutual_information_gauss_hermite(const Constellation& cons, double snr, int order = 48);

/// MMSE with the same tensor Gauss–Hermite rule.
double mmse_gauss_hermite(const Constellation& cons, double snr, int order = 48);

/// max over the grid of |dI/dsnr (nats, central difference, h = 1e-4 snr) - mmse| / mmse.
/// Requires at least three strictly positive grid points.
double mmse_is_derivative_check(const Constellation& cons, std::span<const double> grid);

struct MellinValue {
    double argument = 0.0;      // x
    double value = 0.0;         // integral of t^x mmse(t) over [0, inf)
    double est_abs_error = 0.0; // quadrature estimate plus tail bound
    double split_point = 0.0;   // T: integrated on [0, T], tail bounded analytically
};

struct MellinOptions {
    /// Fixed split point T; 0 picks T automatically, starting from
    /// 8 (x + 4) / d_min^2 and doubling until the tail bound is negligible.
    double split_point = 0.0;
    double rel_tol = 1e-11;
};

/// Mellin transform of the MMSE evaluated at x + 1, x > 0.
/// Throws argument_error for x <= 0 and numerical_error when the error
/// estimate exceeds 1e-6 max(1, value).
MellinValue mellin_mmse(const Constellation& cons, double x, const MellinOptions& opt = {});

} // namespace mgami

#endif
