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

#ifndef MGAMI_POWER_ALLOC_HPP
#define MGAMI_POWER_ALLOC_HPP

#include "mgami/ami.hpp"
#include "mgami/constellation.hpp"
#include "mgami/info_curve.hpp"
#include "mgami/mg_fading.hpp"

#include <memory>
#include <string>
#include <vector>

namespace mgami {

struct Subchannel {
    MixtureGamma fading;
    Constellation cons;
    AsymptoticCharacterization asym;
    std::shared_ptr<const InfoCurve> curve;
};

/// Bank of independent fading sub-channels sharing one total power budget.
class ParallelChannels {
public:
    ParallelChannels() = default;

    /// Appends a sub-channel; its asymptotic characterization and information
    /// curve are computed here.
    void add(const MixtureGamma& fading, const Constellation& cons);

    const std::vector<Subchannel>& subchannels() const noexcept { return subs_; }
    std::size_t size() const noexcept { return subs_.size(); }
    const Subchannel& operator[](std::size_t k) const { return subs_.at(k); }

    /// Smallest diversity order over the bank.
    double min_diversity() const;

private:
    std::vector<Subchannel> subs_;
};

enum class AllocationMethod { exact_kkt, asymptotic, limiting };

std::string to_string(AllocationMethod m);

struct PowerPolicy {
    std::vector<double> fractions;
    double multiplier = 0.0;    // nu; NaN for the limiting policy
    AllocationMethod method = AllocationMethod::exact_kkt;
    double objective_bits = 0.0; // sum of sub-channel AMIs; NaN when no SNR applies
};

/// snr E[a mmse(snr p a)], the derivative of the sub-channel AMI (nats) with
/// respect to its power fraction. Equals snr exactly at p = 0.
double marginal_rate(const MixtureGamma& mg, const InfoCurve& curve, double p, double avg_snr);
double marginal_rate(const MixtureGamma& mg, const Constellation& cons, double p, double avg_snr);

struct KktOptions {
    int max_outer_iterations = 200;
    double sum_tol = 1e-9;
};

/// Optimal fractions from the KKT conditions: for a multiplier nu each active
/// sub-channel satisfies marginal_rate = nu, inactive ones have
/// marginal_rate(0) <= nu, and nu is chosen so the fractions sum to one.
PowerPolicy exact_allocate(const ParallelChannels& chs, double avg_snr, const KktOptions& opt = {});

/// High-SNR policy p_k = (A_k D_k / (nu snr^{D_k}))^{1/(D_k + 1)} with nu
/// fixed by the power budget. A_k is the nats coefficient G_a.
PowerPolicy asymptotic_allocate(const ParallelChannels& chs, double avg_snr);

/// The snr -> infinity limit: sub-channels of minimum diversity share the
/// power in proportion to A_k^{1/(D_min + 1)}, all others get none.
PowerPolicy limiting_allocate(const ParallelChannels& chs);

/// Sum over sub-channels of the AMI (bits) at power fractions p.
double objective_bits(const ParallelChannels& chs, const std::vector<double>& fractions, double avg_snr);

/// Largest relative violation of the KKT conditions by a policy:
/// |marginal_rate - nu| / nu over active sub-channels and
/// max(0, marginal_rate(0) - nu) / nu over inactive ones.
double kkt_residual(const ParallelChannels& chs, const PowerPolicy& policy, double avg_snr);

} // namespace mgami

#endif
