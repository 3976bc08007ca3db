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

#include "mgami/mg_fading.hpp"

#include "mgami/error.hpp"
#include "mgami/quadrature.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace mgami {
namespace {

constexpr double mass_tol = 1e-9;
constexpr double mean_tol = 1e-6;
constexpr double auto_mean_tol = 1e-9;
constexpr int max_truncation = 1 << 15;

std::string fmt(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

double log_weight(const MixtureTerm& t)
{
    return std::log(t.alpha) + std::lgamma(t.beta) - t.beta * std::log(t.zeta);
}

// Raw terms with log-scale coefficients; alpha is filled in by normalize().
struct RawTerm {
    double log_theta;
    double beta;
    double zeta;
};

struct Normalized {
    std::vector<MixtureTerm> terms;
    double mean_error;
};

// alpha_l = theta_l / sum_i theta_i Gamma(beta_i) zeta_i^{-beta_i}, in logs.
Normalized normalize(const std::vector<RawTerm>& raw)
{
    std::vector<double> lw(raw.size());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < raw.size(); ++l) {
        lw[l] = raw[l].log_theta + std::lgamma(raw[l].beta) - raw[l].beta * std::log(raw[l].zeta);
        top = std::max(top, lw[l]);
    }
    double sum = 0.0;
    for (double v : lw)
        sum += std::exp(v - top);
    const double log_norm = top + std::log(sum);

    Normalized out{{}, 0.0};
    double mean = 0.0;
    for (std::size_t l = 0; l < raw.size(); ++l) {
        const double alpha = std::exp(raw[l].log_theta - log_norm);
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            continue;
        out.terms.push_back({alpha, raw[l].beta, raw[l].zeta});
        mean += std::exp(lw[l] - log_norm) * raw[l].beta / raw[l].zeta;
    }
    out.mean_error = std::abs(mean - 1.0);
    return out;
}

std::vector<RawTerm> kappa_mu_terms(double kappa, double mu, int count)
{
    // Poisson(mu kappa) mixture of Gamma(mu + l - 1, rate mu (1 + kappa)).
    const double zeta = mu * (1.0 + kappa);
    const double rate = mu * kappa;
    std::vector<RawTerm> raw;
    for (int n = 0; n < count; ++n) {
        if (rate == 0.0 && n > 0)
            break;
        const double beta = mu + n;
        const double log_prob = -rate + (n == 0 ? 0.0 : n * std::log(rate)) - std::lgamma(n + 1.0);
        raw.push_back({log_prob + beta * std::log(zeta) - std::lgamma(beta), beta, zeta});
    }
    return raw;
}

std::vector<RawTerm> eta_mu_terms(const EtaMu& p, int count)
{
    double h = 0.0, H = 0.0;
    if (p.format == 1) {
        h = (2.0 + 1.0 / p.eta + p.eta) / 4.0;
        H = (1.0 / p.eta - p.eta) / 4.0;
    } else {
        h = 1.0 / (1.0 - p.eta * p.eta);
        H = p.eta / (1.0 - p.eta * p.eta);
    }
    const double mu = p.mu;
    const double zeta = 2.0 * mu * h;
    // Series of the Bessel function in the eta-mu power density; H^{2n} with 0^0 = 1.
    const double base = std::log(2.0 * std::sqrt(std::numbers::pi)) + 2.0 * mu * std::log(mu) + mu * std::log(h) -
                        std::lgamma(mu);
    std::vector<RawTerm> raw;
    for (int n = 0; n < count; ++n) {
        if (H == 0.0 && n > 0)
            break;
        const double power = n == 0 ? 0.0 : 2.0 * n * std::log(mu * std::abs(H));
        raw.push_back({base + power - std::lgamma(n + 1.0) - std::lgamma(n + mu + 0.5), 2.0 * (mu + n), zeta});
    }
    return raw;
}

std::vector<RawTerm> kg_terms(const KG& p, int order)
{
    const QuadratureRule rule = gauss_laguerre(order);
    const double k = p.k, m = p.m;
    std::vector<RawTerm> raw;
    for (int l = 0; l < order; ++l) {
        const double tau = rule.nodes[l];
        const double log_theta = m * std::log(k * m) + rule.log_weights[l] + (k - m - 1.0) * std::log(tau) -
                                 std::lgamma(m) - std::lgamma(k);
        raw.push_back({log_theta, m, k * m / tau});
    }
    return raw;
}

template <class Build>
MixtureGamma truncated(Build build, std::optional<int> truncation, const std::string& label)
{
    if (truncation) {
        if (*truncation < 1)
            throw argument_error("truncation must be at least 1, got " + std::to_string(*truncation));
        Normalized n = normalize(build(*truncation));
        if (n.mean_error > mean_tol)
            throw truncation_error(label + ": " + std::to_string(*truncation) +
                                       " terms leave a unit-mean error of " + fmt(n.mean_error),
                                   n.mean_error);
        return MixtureGamma(std::move(n.terms), label);
    }
    for (int count = default_truncation;; count *= 2) {
        Normalized n = normalize(build(count));
        if (n.mean_error <= auto_mean_tol)
            return MixtureGamma(std::move(n.terms), label);
        if (count >= max_truncation) {
            if (n.mean_error <= mean_tol)
                return MixtureGamma(std::move(n.terms), label);
            throw truncation_error(label + ": unit-mean error " + fmt(n.mean_error) + " after " +
                                       std::to_string(count) + " terms",
                                   n.mean_error);
        }
    }
}

} // namespace

MixtureGamma::MixtureGamma(std::vector<MixtureTerm> terms, std::string family_label)
    : terms_(std::move(terms)), label_(std::move(family_label))
{
    if (terms_.empty())
        throw argument_error("a mixture-gamma density needs at least one term");
    for (const MixtureTerm& t : terms_)
        if (!(t.alpha > 0.0) || !(t.beta > 0.0) || !(t.zeta > 0.0) || !std::isfinite(t.alpha) ||
            !std::isfinite(t.beta) || !std::isfinite(t.zeta))
            throw argument_error("mixture terms need finite alpha, beta, zeta > 0");
    weights_.reserve(terms_.size());
    for (const MixtureTerm& t : terms_)
        weights_.push_back(std::exp(log_weight(t)));

    const double mass = total_mass();
    if (std::abs(mass - 1.0) > mass_tol)
        throw argument_error("mixture weights sum to " + fmt(mass) + ", expected 1 within 1e-9");
    const double mu = mean();
    if (std::abs(mu - 1.0) > mean_tol)
        throw argument_error("mixture mean is " + fmt(mu) + ", expected 1 within 1e-6");

    std::vector<double> betas;
    for (const MixtureTerm& t : terms_)
        betas.push_back(t.beta);
    std::sort(betas.begin(), betas.end());
    double prev = betas.front();
    for (double b : betas) {
        const double step = b - prev;
        if (step > 1e-9 && step < 1.0 - 1e-9)
            throw argument_error("distinct beta values must differ by at least 1 (found step " + fmt(step) + ")");
        if (step > 1e-9)
            prev = b;
    }
}

double MixtureGamma::total_mass() const noexcept
{
    double s = 0.0;
    for (double w : weights_)
        s += w;
    return s;
}

double MixtureGamma::mean() const noexcept
{
    double s = 0.0;
    for (std::size_t l = 0; l < terms_.size(); ++l)
        s += weights_[l] * terms_[l].beta / terms_[l].zeta;
    return s;
}

double MixtureGamma::min_beta() const noexcept
{
    double b = terms_.front().beta;
    for (const MixtureTerm& t : terms_)
        b = std::min(b, t.beta);
    return b;
}

void validate(const FadingParams& p)
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw argument_error(std::string(name) + " must be positive and finite, got " + fmt(v));
    };
    std::visit(
        [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, Nakagami>) {
                positive(q.m, "Nakagami m");
            } else if constexpr (std::is_same_v<T, EtaMu>) {
                positive(q.mu, "eta-mu mu");
                if (q.format == 1)
                    positive(q.eta, "eta-mu (format 1) eta");
                else if (q.format == 2) {
                    if (!(q.eta > -1.0 && q.eta < 1.0))
                        throw argument_error("eta-mu (format 2) eta must lie in (-1, 1), got " + fmt(q.eta));
                } else
                    throw argument_error("eta-mu format must be 1 or 2, got " + std::to_string(q.format));
            } else if constexpr (std::is_same_v<T, KappaMu>) {
                positive(q.kappa, "kappa-mu kappa");
                positive(q.mu, "kappa-mu mu");
            } else if constexpr (std::is_same_v<T, Rician>) {
                if (!(q.K >= 0.0) || !std::isfinite(q.K))
                    throw argument_error("Rician K must be non-negative and finite, got " + fmt(q.K));
            } else {
                positive(q.k, "K_G k");
                positive(q.m, "K_G m");
                if (q.order < 1 || q.order > max_rule_order)
                    throw argument_error("K_G order must lie in [1, 200], got " + std::to_string(q.order));
            }
        },
        p);
}

std::string describe(const FadingParams& p)
{
    return std::visit(
        [](const auto& q) -> std::string {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, Nakagami>)
                return "nakagami(m=" + fmt(q.m) + ")";
            else if constexpr (std::is_same_v<T, EtaMu>)
                return "eta-mu(format=" + std::to_string(q.format) + ",eta=" + fmt(q.eta) + ",mu=" + fmt(q.mu) + ")";
            else if constexpr (std::is_same_v<T, KappaMu>)
                return "kappa-mu(kappa=" + fmt(q.kappa) + ",mu=" + fmt(q.mu) + ")";
            else if constexpr (std::is_same_v<T, Rician>)
                return "rician(K=" + fmt(q.K) + ")";
            else
                return "kg(k=" + fmt(q.k) + ",m=" + fmt(q.m) + ",N=" + std::to_string(q.order) + ")";
        },
        p);
}

MixtureGamma from_params(const FadingParams& p, std::optional<int> truncation)
{
    validate(p);
    const std::string label = describe(p);
    return std::visit(
        [&](const auto& q) -> MixtureGamma {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, Nakagami>) {
                return MixtureGamma({{std::exp(q.m * std::log(q.m) - std::lgamma(q.m)), q.m, q.m}}, label);
            } else if constexpr (std::is_same_v<T, EtaMu>) {
                return truncated([&](int n) { return eta_mu_terms(q, n); }, truncation, label);
            } else if constexpr (std::is_same_v<T, KappaMu>) {
                return truncated([&](int n) { return kappa_mu_terms(q.kappa, q.mu, n); }, truncation, label);
            } else if constexpr (std::is_same_v<T, Rician>) {
                return truncated([&](int n) { return kappa_mu_terms(q.K, 1.0, n); }, truncation, label);
            } else {
                const int order = truncation.value_or(q.order);
                if (order < 1 || order > max_rule_order)
                    throw argument_error("K_G order must lie in [1, 200], got " + std::to_string(order));
                Normalized n = normalize(kg_terms(q, order));
                if (n.mean_error > mean_tol)
                    throw truncation_error(label + ": order " + std::to_string(order) +
                                               " leaves a unit-mean error of " + fmt(n.mean_error),
                                           n.mean_error);
                return MixtureGamma(std::move(n.terms), label);
            }
        },
        p);
}

double pdf(const MixtureGamma& mg, double a)
{
    if (!(a >= 0.0))
        throw argument_error("pdf argument must be non-negative, got " + fmt(a));
    double s = 0.0;
    for (const MixtureTerm& t : mg.terms()) {
        if (a == 0.0) {
            if (t.beta < 1.0)
                return std::numeric_limits<double>::infinity();
            if (t.beta == 1.0)
                s += t.alpha;
            continue;
        }
        s += std::exp(std::log(t.alpha) + (t.beta - 1.0) * std::log(a) - t.zeta * a);
    }
    return s;
}

double cdf(const MixtureGamma& mg, double a)
{
    if (!(a >= 0.0))
        throw argument_error("cdf argument must be non-negative, got " + fmt(a));
    if (std::isinf(a))
        return 1.0;
    double s = 0.0;
    for (std::size_t l = 0; l < mg.terms().size(); ++l) {
        const MixtureTerm& t = mg.terms()[l];
        s += mg.weights()[l] * boost::math::gamma_p(t.beta, t.zeta * a);
    }
    return std::clamp(s, 0.0, 1.0);
}

std::vector<double> sample(const MixtureGamma& mg, std::uint64_t seed, std::size_t count)
{
    if (count < 1)
        throw argument_error("sample count must be at least 1");
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(mg.weights().begin(), mg.weights().end());
    std::vector<std::gamma_distribution<double>> comps;
    for (const MixtureTerm& t : mg.terms())
        comps.emplace_back(t.beta, 1.0 / t.zeta);
    std::vector<double> out(count);
    for (double& x : out)
        x = comps[pick(rng)](rng);
    return out;
}

} // namespace mgami
