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

#include "mgami/ami.hpp"

#include "mgami/error.hpp"
#include "mgami/integrate.hpp"
#include "mgami/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace mgami {
namespace {

void check_avg_snr(double avg_snr)
{
    if (!(avg_snr > 0.0) || !std::isfinite(avg_snr))
        throw argument_error("average SNR must be positive and finite, got " + std::to_string(avg_snr));
}

AsymptoticCharacterization finish(double diversity, double fading_part, const Constellation& cons)
{
    AsymptoticCharacterization ch;
    ch.diversity_order = diversity;
    ch.coeff_fading_part = fading_part;
    ch.mellin = mellin_mmse(cons, diversity);
    ch.coeff = fading_part * ch.mellin.value;
    ch.coding_gain = std::pow(ch.coeff, -1.0 / diversity);
    ch.ami_limit_bits = cons.log2_size();
    ch.coeff_bits = ch.coeff / std::numbers::ln2;
    return ch;
}

} // namespace

double ami_quadrature(const MixtureGamma& mg, const Constellation& cons, double avg_snr, int order)
{
    check_avg_snr(avg_snr);
    const QuadratureRule rule = gauss_laguerre(order);
    std::map<double, double> cache;
    double sum = 0.0;
    for (const MixtureTerm& t : mg.terms()) {
        for (int i = 0; i < order; ++i) {
            const double snr = avg_snr * rule.nodes[i] / t.zeta;
            auto it = cache.find(snr);
            if (it == cache.end())
                it = cache.emplace(snr, mutual_information(cons, snr)).first;
            const double w = std::exp(std::log(t.alpha) - t.beta * std::log(t.zeta) + rule.log_weights[i] +
                                      (t.beta - 1.0) * std::log(rule.nodes[i]));
            sum += w * it->second;
        }
    }
    return std::clamp(sum, 0.0, cons.log2_size());
}

McEstimate ami_mc(const MixtureGamma& mg, const InfoCurve& curve, double avg_snr, std::size_t trials,
                  std::uint64_t seed)
{
    check_avg_snr(avg_snr);
    if (trials < 1000)
        throw argument_error("Monte Carlo needs at least 1000 trials, got " + std::to_string(trials));
    const std::vector<double> a = sample(mg, seed, trials);
    // Welford's update keeps the variance accurate when I is nearly constant.
    double mean = 0.0, m2 = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        const double x = curve.mutual_information(avg_snr * a[n]);
        const double delta = x - mean;
        mean += delta / static_cast<double>(n + 1);
        m2 += delta * (x - mean);
    }
    const double var = m2 / static_cast<double>(trials - 1);
    return {mean, std::sqrt(var / static_cast<double>(trials))};
}

McEstimate ami_mc(const MixtureGamma& mg, const Constellation& cons, double avg_snr, std::size_t trials,
                  std::uint64_t seed)
{
    return ami_mc(mg, InfoCurve(cons), avg_snr, trials, seed);
}

double ami_gap_bits(const MixtureGamma& mg, const InfoCurve& curve, double avg_snr)
{
    check_avg_snr(avg_snr);
    double zeta_max = 0.0, zeta_min = std::numeric_limits<double>::infinity();
    for (const MixtureTerm& t : mg.terms()) {
        zeta_max = std::max(zeta_max, t.zeta);
        zeta_min = std::min(zeta_min, t.zeta);
    }
    const double log_snr = std::log(avg_snr);

    // Below t_lo the gap and the exponential factor are constant to O(t_lo).
    const double t_lo = 1e-10 * std::min(1.0, avg_snr / zeta_max);
    const double t_hi = std::min(curve.snr_high(), 800.0 * avg_snr / zeta_min);
    double small = 0.0;
    for (const MixtureTerm& t : mg.terms())
        small += std::exp(std::log(t.alpha) - t.beta * log_snr + t.beta * std::log(t_lo)) / t.beta;
    small *= curve.gap_nats(0.0);

    // Gap density in u = ln t: sum_l alpha_l snr^{-beta_l} t^{beta_l} e^{-zeta_l t / snr} gap(t).
    auto f = [&](double u) {
        const double t = std::exp(u);
        const double gap = curve.gap_nats(t);
        if (gap == 0.0)
            return 0.0;
        double s = 0.0;
        for (const MixtureTerm& term : mg.terms())
            s += std::exp(std::log(term.alpha) + term.beta * (u - log_snr) - term.zeta * t / avg_snr);
        return s * gap;
    };
    double total = small;
    if (t_hi > t_lo) {
        const double u0 = std::log(t_lo), u1 = std::log(t_hi);
        const int pieces = std::max(1, static_cast<int>(std::ceil(u1 - u0)));
        std::vector<double> cuts;
        for (int i = 0; i <= pieces; ++i)
            cuts.push_back(u0 + (u1 - u0) * i / pieces);
        const IntegrationResult r = integrate_adaptive(f, cuts, {1e-11, 0.0, 4000});
        if (!r.converged && r.abs_error > 1e-8 * std::abs(r.value))
            throw numerical_error("average gap integral did not converge at avg_snr = " + std::to_string(avg_snr));
        total += r.value;
    }
    return total / std::numbers::ln2;
}

double ami_adaptive(const MixtureGamma& mg, const InfoCurve& curve, double avg_snr)
{
    const double limit = curve.constellation().log2_size();
    return std::clamp(limit - ami_gap_bits(mg, curve, avg_snr), 0.0, limit);
}

AsymptoticCharacterization characterize_asymptote(const MixtureGamma& mg, const Constellation& cons)
{
    const double beta1 = mg.min_beta();
    double alpha_sum = 0.0;
    for (const MixtureTerm& t : mg.terms())
        if (std::abs(t.beta - beta1) <= beta_group_tol)
            alpha_sum += t.alpha;
    return finish(beta1, alpha_sum / beta1, cons);
}

double asymptotic_gap_bits(const AsymptoticCharacterization& ch, double avg_snr)
{
    check_avg_snr(avg_snr);
    return ch.coeff_bits * std::pow(avg_snr, -ch.diversity_order);
}

double asymptotic_ami(const AsymptoticCharacterization& ch, double avg_snr)
{
    return ch.ami_limit_bits - asymptotic_gap_bits(ch, avg_snr);
}

AsymptoticCharacterization corollary_asymptote(const FadingParams& p, const Constellation& cons)
{
    validate(p);
    struct Leading {
        double diversity;
        double fading_part;
    };
    const Leading lead = std::visit(
        [](const auto& q) -> Leading {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, Nakagami>) {
                return {q.m, std::exp((q.m - 1.0) * std::log(q.m) - std::lgamma(q.m))};
            } else if constexpr (std::is_same_v<T, EtaMu>) {
                const double h = q.format == 1 ? (2.0 + 1.0 / q.eta + q.eta) / 4.0 : 1.0 / (1.0 - q.eta * q.eta);
                const double H = q.format == 1 ? (1.0 / q.eta - q.eta) / 4.0 : q.eta / (1.0 - q.eta * q.eta);
                const double log_alpha1 = std::log(2.0 * std::sqrt(std::numbers::pi)) + 2.0 * q.mu * std::log(q.mu) +
                                          q.mu * std::log(h * h - H * H) - std::lgamma(q.mu) -
                                          std::lgamma(q.mu + 0.5);
                return {2.0 * q.mu, std::exp(log_alpha1) / (2.0 * q.mu)};
            } else if constexpr (std::is_same_v<T, KappaMu> || std::is_same_v<T, Rician>) {
                double kappa, mu;
                if constexpr (std::is_same_v<T, KappaMu>) {
                    kappa = q.kappa;
                    mu = q.mu;
                } else {
                    kappa = q.K;
                    mu = 1.0;
                }
                const double log_alpha1 = mu * std::log(mu) + mu * std::log1p(kappa) - mu * kappa - std::lgamma(mu);
                return {mu, std::exp(log_alpha1) / mu};
            } else {
                // All N terms share beta = m; sum_l alpha_l over the exact normalizer.
                const QuadratureRule rule = gauss_laguerre(q.order);
                double num = 0.0, den = 0.0;
                for (int l = 0; l < q.order; ++l) {
                    num += std::exp(rule.log_weights[l] + (q.k - q.m - 1.0) * std::log(rule.nodes[l]));
                    den += std::exp(rule.log_weights[l] + (q.k - 1.0) * std::log(rule.nodes[l]));
                }
                const double log_part = q.m * std::log(q.k * q.m) + std::log(num) - std::log(den) - std::lgamma(q.m + 1.0);
                return {q.m, std::exp(log_part)};
            }
        },
        p);
    return finish(lead.diversity, lead.fading_part, cons);
}

} // namespace mgami
