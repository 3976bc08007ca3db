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

#include "mgami/power_alloc.hpp"

#include "mgami/error.hpp"
#include "mgami/integrate.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mgami {
namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void check_avg_snr(double avg_snr)
{
    if (!(avg_snr > 0.0) || !std::isfinite(avg_snr))
        throw argument_error("average SNR must be positive and finite, got " + std::to_string(avg_snr));
}

void check_bank(const ParallelChannels& chs)
{
    if (chs.size() == 0)
        throw argument_error("power allocation needs at least one sub-channel");
}

std::vector<double> normalized(std::vector<double> p)
{
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& x : p)
        x /= s;
    return p;
}

// Absolute tolerance for the bracketing solvers below.
struct AbsTol {
    double tol;
    bool operator()(double a, double b) const { return std::abs(a - b) <= tol; }
};

} // namespace

std::string to_string(AllocationMethod m)
{
    switch (m) {
    case AllocationMethod::exact_kkt:
        return "exact_kkt";
    case AllocationMethod::asymptotic:
        return "asymptotic";
    case AllocationMethod::limiting:
        return "limiting";
    }
    return "unknown";
}

void ParallelChannels::add(const MixtureGamma& fading, const Constellation& cons)
{
    subs_.push_back({fading, cons, characterize_asymptote(fading, cons), make_info_curve(cons)});
}

double ParallelChannels::min_diversity() const
{
    double d = std::numeric_limits<double>::infinity();
    for (const Subchannel& s : subs_)
        d = std::min(d, s.asym.diversity_order);
    return d;
}

double marginal_rate(const MixtureGamma& mg, const InfoCurve& curve, double p, double avg_snr)
{
    check_avg_snr(avg_snr);
    if (!(p >= 0.0) || !std::isfinite(p))
        throw argument_error("power fraction must be non-negative and finite");
    if (p == 0.0)
        return avg_snr;

    // With s = snr p and t = s a:
    //   snr sum_l alpha_l s^{-beta_l - 1} int t^{beta_l} e^{-zeta_l t / s} mmse(t) dt.
    const double s = avg_snr * p;
    const double log_s = std::log(s);
    double zeta_max = 0.0, zeta_min = std::numeric_limits<double>::infinity();
    for (const MixtureTerm& t : mg.terms()) {
        zeta_max = std::max(zeta_max, t.zeta);
        zeta_min = std::min(zeta_min, t.zeta);
    }
    const double t_lo = 1e-10 * std::min(1.0, s / zeta_max);
    const double t_hi = std::min(curve.snr_high(), 800.0 * s / zeta_min);

    double small = 0.0;
    for (const MixtureTerm& t : mg.terms())
        small += std::exp(std::log(t.alpha) + (t.beta + 1.0) * (std::log(t_lo) - log_s)) / (t.beta + 1.0);
    small *= curve.mmse(0.0);

    auto f = [&](double u) {
        const double t = std::exp(u);
        double sum = 0.0;
        for (const MixtureTerm& term : mg.terms())
            sum += std::exp(std::log(term.alpha) + (term.beta + 1.0) * (u - log_s) - term.zeta * t / s);
        return sum * curve.mmse(t);
    };
    double total = small;
    if (t_hi > t_lo) {
        const double u0 = std::log(t_lo), u1 = std::log(t_hi);
        const int pieces = std::max(1, static_cast<int>(std::ceil(u1 - u0)));
        std::vector<double> cuts;
        for (int i = 0; i <= pieces; ++i)
            cuts.push_back(u0 + (u1 - u0) * i / pieces);
        total += integrate_adaptive(f, cuts, {1e-11, 0.0, 4000}).value;
    }
    return avg_snr * total;
}

double marginal_rate(const MixtureGamma& mg, const Constellation& cons, double p, double avg_snr)
{
    return marginal_rate(mg, *make_info_curve(cons), p, avg_snr);
}

double objective_bits(const ParallelChannels& chs, const std::vector<double>& fractions, double avg_snr)
{
    check_avg_snr(avg_snr);
    if (fractions.size() != chs.size())
        throw argument_error("one power fraction per sub-channel is required");
    double total = 0.0;
    for (std::size_t k = 0; k < chs.size(); ++k)
        if (fractions[k] > 0.0)
            total += ami_adaptive(chs[k].fading, *chs[k].curve, avg_snr * fractions[k]);
    return total;
}

PowerPolicy exact_allocate(const ParallelChannels& chs, double avg_snr, const KktOptions& opt)
{
    check_bank(chs);
    check_avg_snr(avg_snr);
    const std::size_t K = chs.size();
    auto rate = [&](std::size_t k, double p) { return marginal_rate(chs[k].fading, *chs[k].curve, p, avg_snr); };

    PowerPolicy policy;
    policy.method = AllocationMethod::exact_kkt;
    if (K == 1) {
        policy.fractions = {1.0};
        policy.multiplier = rate(0, 1.0);
        policy.objective_bits = objective_bits(chs, policy.fractions, avg_snr);
        return policy;
    }

    std::vector<double> full(K);
    for (std::size_t k = 0; k < K; ++k)
        full[k] = rate(k, 1.0);

    // p_k(nu): the root of marginal_rate = nu in [0, 1], or an endpoint.
    auto fraction = [&](std::size_t k, double nu) {
        if (avg_snr <= nu)
            return 0.0;
        if (full[k] >= nu)
            return 1.0;
        std::uintmax_t iters = 100;
        const auto root = boost::math::tools::toms748_solve([&](double p) { return rate(k, p) - nu; }, 0.0, 1.0,
                                                            avg_snr - nu, full[k] - nu, AbsTol{1e-13}, iters);
        return 0.5 * (root.first + root.second);
    };
    auto fractions_at = [&](double log_nu) {
        std::vector<double> p(K);
        for (std::size_t k = 0; k < K; ++k)
            p[k] = fraction(k, std::exp(log_nu));
        return p;
    };
    auto excess = [&](double log_nu) {
        const std::vector<double> p = fractions_at(log_nu);
        return std::accumulate(p.begin(), p.end(), 0.0) - 1.0;
    };

    // Every p_k = 1 below the smallest full-power rate; all vanish at nu = snr.
    const double lo = std::log(std::max(0.5 * *std::min_element(full.begin(), full.end()), 1e-300));
    const double hi = std::log(avg_snr);
    const double f_lo = excess(lo);
    if (!(f_lo > 0.0))
        throw solver_error("KKT multiplier bracket is invalid", f_lo);
    std::uintmax_t iters = static_cast<std::uintmax_t>(opt.max_outer_iterations);
    const auto root =
        boost::math::tools::toms748_solve(excess, lo, hi, f_lo, -1.0, AbsTol{1e-14 * std::max(1.0, std::abs(lo))}, iters);
    const double log_nu = 0.5 * (root.first + root.second);
    std::vector<double> p = fractions_at(log_nu);
    const double residual = std::accumulate(p.begin(), p.end(), 0.0) - 1.0;
    if (std::abs(residual) > opt.sum_tol)
        throw solver_error("KKT power allocation did not converge (sum of fractions off by " +
                               std::to_string(residual) + ")",
                           residual);
    policy.fractions = normalized(std::move(p));
    policy.multiplier = std::exp(log_nu);
    policy.objective_bits = objective_bits(chs, policy.fractions, avg_snr);
    return policy;
}

PowerPolicy asymptotic_allocate(const ParallelChannels& chs, double avg_snr)
{
    check_bank(chs);
    check_avg_snr(avg_snr);
    const std::size_t K = chs.size();
    const double log_snr = std::log(avg_snr);
    // ln p_k = (ln(A_k D_k) - ln nu - D_k ln snr) / (D_k + 1).
    auto fractions_at = [&](double log_nu) {
        std::vector<double> p(K);
        for (std::size_t k = 0; k < K; ++k) {
            const double D = chs[k].asym.diversity_order;
            p[k] = std::exp((std::log(chs[k].asym.coeff * D) - log_nu - D * log_snr) / (D + 1.0));
        }
        return p;
    };
    auto excess = [&](double log_nu) {
        const std::vector<double> p = fractions_at(log_nu);
        return std::log(std::accumulate(p.begin(), p.end(), 0.0));
    };

    double lo = -1.0, hi = 1.0;
    for (int i = 0; i < 200 && excess(lo) <= 0.0; ++i)
        lo = 2.0 * lo - 1.0;
    for (int i = 0; i < 200 && excess(hi) >= 0.0; ++i)
        hi = 2.0 * hi + 1.0;
    if (!(excess(lo) > 0.0) || !(excess(hi) < 0.0))
        throw solver_error("could not bracket the asymptotic multiplier", excess(lo));
    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve(excess, lo, hi, AbsTol{1e-14 * std::max(1.0, std::abs(lo))}, iters);
    const double log_nu = 0.5 * (root.first + root.second);
    std::vector<double> p = fractions_at(log_nu);
    const double residual = std::accumulate(p.begin(), p.end(), 0.0) - 1.0;
    if (std::abs(residual) > 1e-9)
        throw solver_error("asymptotic power allocation did not converge", residual);

    PowerPolicy policy;
    policy.method = AllocationMethod::asymptotic;
    policy.fractions = normalized(std::move(p));
    policy.multiplier = std::exp(log_nu);
    policy.objective_bits = objective_bits(chs, policy.fractions, avg_snr);
    return policy;
}

PowerPolicy limiting_allocate(const ParallelChannels& chs)
{
    check_bank(chs);
    const double d_min = chs.min_diversity();
    std::vector<double> p(chs.size(), 0.0);
    for (std::size_t k = 0; k < chs.size(); ++k)
        if (std::abs(chs[k].asym.diversity_order - d_min) <= beta_group_tol)
            p[k] = std::pow(chs[k].asym.coeff, 1.0 / (d_min + 1.0));
    PowerPolicy policy;
    policy.method = AllocationMethod::limiting;
    policy.fractions = normalized(std::move(p));
    policy.multiplier = nan;
    policy.objective_bits = nan;
    return policy;
}

double kkt_residual(const ParallelChannels& chs, const PowerPolicy& policy, double avg_snr)
{
    check_avg_snr(avg_snr);
    if (policy.fractions.size() != chs.size())
        throw argument_error("policy size does not match the number of sub-channels");
    const double nu = policy.multiplier;
    double worst = 0.0;
    for (std::size_t k = 0; k < chs.size(); ++k) {
        const double p = policy.fractions[k];
        const double r = marginal_rate(chs[k].fading, *chs[k].curve, p, avg_snr);
        worst = std::max(worst, p > 0.0 ? std::abs(r - nu) / nu : std::max(0.0, r - nu) / nu);
    }
    return worst;
}

} // namespace mgami
