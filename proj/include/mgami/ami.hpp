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

#ifndef MGAMI_AMI_HPP
#define MGAMI_AMI_HPP

#include "mgami/awgn_info.hpp"
#include "mgami/constellation.hpp"
#include "mgami/info_curve.hpp"
#include "mgami/mg_fading.hpp"

#include <cstdint>

namespace mgami {

/// Average mutual information (bits) by the Gauss–Laguerre double sum
///   sum_l sum_i alpha_l w_i zeta_l^{-beta_l} tau_i^{beta_l - 1} I(snr tau_i / zeta_l).
/// The fixed rule cannot resolve I(snr a) near a = 0 once snr is large, so
/// its error grows with SNR; ami_adaptive() is the accurate path.
double ami_quadrature(const MixtureGamma& mg, const Constellation& cons, double avg_snr, int order = 30);

struct McEstimate {
    double mean = 0.0;      // bits
    double std_error = 0.0; // standard error of the mean
};

/// Sample mean of I(snr a) over a ~ mg. Deterministic given the seed.
McEstimate ami_mc(const MixtureGamma& mg, const InfoCurve& curve, double avg_snr, std::size_t trials,
                  std::uint64_t seed);
McEstimate ami_mc(const MixtureGamma& mg, const Constellation& cons, double avg_snr, std::size_t trials,
                  std::uint64_t seed);

/// log2 M - AMI in bits, integrated adaptively over log SNR without cancellation.
double ami_gap_bits(const MixtureGamma& mg, const InfoCurve& curve, double avg_snr);

/// AMI in bits via ami_gap_bits().
double ami_adaptive(const MixtureGamma& mg, const InfoCurve& curve, double avg_snr);

/// Leading high-SNR behaviour log2 M - G_a snr^{-G_d}.
///
/// coeff (G_a) is the product of coeff_fading_part and the Mellin value, both
/// taken with the MMSE in nats; coeff_bits = coeff / ln 2 is the prefactor of
/// the gap when the AMI is measured in bits.
struct AsymptoticCharacterization {
    double diversity_order = 0.0;   // G_d
    double coeff = 0.0;             // G_a
    double coeff_fading_part = 0.0; // G_{a,r}
    MellinValue mellin;             // at x = G_d
    double coding_gain = 0.0;       // G_a^{-1/G_d}
    double ami_limit_bits = 0.0;    // log2 M
    double coeff_bits = 0.0;
};

/// Tolerance used to decide which terms share the smallest beta.
inline constexpr double beta_group_tol = 1e-9;

AsymptoticCharacterization characterize_asymptote(const MixtureGamma& mg, const Constellation& cons);

/// log2 M - coeff_bits snr^{-G_d}; not clamped, so it can be negative at low SNR.
double asymptotic_ami(const AsymptoticCharacterization& ch, double avg_snr);

/// coeff_bits snr^{-G_d}.
double asymptotic_gap_bits(const AsymptoticCharacterization& ch, double avg_snr);

/// The same characterization from the closed-form first coefficient of each
/// family, without building the mixture. For K_G the coefficient keeps the
/// exact Laguerre sums rather than their Gamma-function limits.
AsymptoticCharacterization corollary_asymptote(const FadingParams& p, const Constellation& cons);

} // namespace mgami

#endif
