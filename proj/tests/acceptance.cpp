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

// Acceptance checks. Prints one PASS/FAIL line per criterion; with a numeric
// argument only that criterion runs. Exit status is the number of failures.

#include "mgami/ami.hpp"
#include "mgami/awgn_info.hpp"
#include "mgami/mg_fading.hpp"
#include "mgami/power_alloc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

using namespace mgami;

namespace {

double db(double v) { return std::pow(10.0, v / 10.0); }

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome immse_identity()
{
    double worst = 0.0;
    const std::vector<double> grid{0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    for (const Constellation& c : {make_psk(2), make_qam(4), make_qam(16)}) {
        const double e = mmse_is_derivative_check(c, grid);
        std::printf("    %-8s max rel error %.3e\n", c.label().c_str(), e);
        worst = std::max(worst, e);
    }
    return {worst < 1e-4, fmt("max relative error %.3e (tol 1e-4)", worst)};
}

Outcome quadrature_vs_mc()
{
    struct Case {
        FadingParams fading;
        Constellation cons;
    };
    const std::vector<Case> cases{{Nakagami{1.0}, make_qam(4)}, {Nakagami{2.0}, make_qam(16)}};
    bool ok = true;
    double worst = 0.0;
    for (const Case& c : cases) {
        const MixtureGamma mg = from_params(c.fading);
        const InfoCurve& curve = *make_info_curve(c.cons);
        for (double d : {0.0, 10.0, 20.0}) {
            const double quad = ami_quadrature(mg, c.cons, db(d), 30);
            const McEstimate mc = ami_mc(mg, curve, db(d), 1000000, 20240601);
            const double z = std::abs(quad - mc.mean) / mc.std_error;
            const double z_adaptive = std::abs(ami_adaptive(mg, curve, db(d)) - mc.mean) / mc.std_error;
            std::printf("    %-22s %-7s %4.0f dB  N=30 %.6f  MC %.6f +- %.1e  |z| %7.2f %s  (adaptive |z| %.2f)\n",
                        mg.family_label().c_str(), c.cons.label().c_str(), d, quad, mc.mean, mc.std_error, z,
                        z <= 3.0 ? "ok" : "OUT", z_adaptive);
            ok = ok && z <= 3.0;
            worst = std::max(worst, z);
        }
    }
    return {ok, fmt("largest deviation %.2f standard errors (tol 3)", worst)};
}

std::vector<FadingParams> reference_configs()
{
    return {Nakagami{2.0}, EtaMu{1, 4.0, 1.0}, KappaMu{1.0, 2.0}, KG{4.0, 2.0, 30}};
}

Outcome asymptote_tracking()
{
    const Constellation q4 = make_qam(4);
    const InfoCurve& curve = *make_info_curve(q4);
    bool ok = true;
    std::string summary;
    for (const FadingParams& p : reference_configs()) {
        const MixtureGamma mg = from_params(p);
        const AsymptoticCharacterization ch = characterize_asymptote(mg, q4);
        std::vector<double> ratios;
        std::vector<double> gaps;
        const std::vector<double> sweep_db{20.0, 30.0, 40.0, 50.0, 60.0};
        for (double d : sweep_db) {
            const double gap = ami_gap_bits(mg, curve, db(d));
            gaps.push_back(gap);
            ratios.push_back(gap / asymptotic_gap_bits(ch, db(d)));
        }
        const double top = ratios.back();
        const double slope = std::log10(gaps.back() / gaps[gaps.size() - 2]);
        const bool this_ok = top >= 0.95 && top <= 1.05 && std::abs(slope + ch.diversity_order) <= 0.05;
        std::printf("    %-32s G_d %.3f  ratio", mg.family_label().c_str(), ch.diversity_order);
        for (double r : ratios)
            std::printf(" %.5f", r);
        std::printf("  slope %.4f %s\n", slope, this_ok ? "ok" : "OUT");
        ok = ok && this_ok;
    }
    return {ok, "ratio at 60 dB within [0.95, 1.05] and last-decade slope within 0.05 of -G_d"};
}

std::vector<FadingParams> parameter_sweep()
{
    std::vector<FadingParams> out;
    for (double m : {0.5, 1.0, 2.0, 4.0})
        out.push_back(Nakagami{m});
    for (double eta : {0.25, 4.0})
        for (double mu : {0.5, 1.0, 2.0})
            out.push_back(EtaMu{1, eta, mu});
    for (double kappa : {1.0, 2.0, 5.0})
        for (double mu : {1.0, 2.0})
            out.push_back(KappaMu{kappa, mu});
    for (double k : {2.0, 4.0})
        for (double m : {1.0, 2.0})
            for (int n : {20, 30})
                out.push_back(KG{k, m, n});
    return out;
}

Outcome corollary_cross_check()
{
    double worst = 0.0;
    for (const Constellation& c : {make_qam(4), make_qam(16)})
        for (const FadingParams& p : parameter_sweep()) {
            const AsymptoticCharacterization g = characterize_asymptote(from_params(p), c);
            const AsymptoticCharacterization k = corollary_asymptote(p, c);
            const double e = std::max(std::abs(g.diversity_order - k.diversity_order) / g.diversity_order,
                                      std::abs(g.coeff - k.coeff) / g.coeff);
            worst = std::max(worst, e);
        }
    return {worst < 1e-6, fmt("max relative difference %.3e over %zu configurations (tol 1e-6)", worst,
                              2 * parameter_sweep().size())};
}

Outcome kkt_vs_grid()
{
    ParallelChannels chs;
    chs.add(from_params(Nakagami{1.0}), make_qam(4));
    chs.add(from_params(Nakagami{1.0}), make_qam(4));
    bool ok = true;
    for (double d : {5.0, 15.0}) {
        const double g = db(d);
        const PowerPolicy p = exact_allocate(chs, g);
        double best = 0.0, best_v = -1.0;
        for (int i = 0; i <= 10000; ++i) {
            const double p1 = i * 1e-4;
            if (const double v = objective_bits(chs, {p1, 1.0 - p1}, g); v > best_v) {
                best_v = v;
                best = p1;
            }
        }
        const double residual = kkt_residual(chs, p, g);
        const bool this_ok = std::abs(p.fractions[0] - best) <= 2e-4 && residual < 1e-6;
        std::printf("    %4.0f dB  exact p1 %.6f  grid p1 %.4f  KKT residual %.2e %s\n", d, p.fractions[0], best,
                    residual, this_ok ? "ok" : "OUT");
        ok = ok && this_ok;
    }
    return {ok, "grid agreement within 2e-4 and KKT residual below 1e-6"};
}

Outcome nakagami_pair_allocation()
{
    ParallelChannels chs;
    chs.add(from_params(Nakagami{1.0}), make_qam(4));
    chs.add(from_params(Nakagami{4.0}), make_qam(4));
    std::vector<double> p1, p2;
    std::vector<double> grid;
    for (double d = 10.0; d <= 40.0 + 1e-9; d += 2.5)
        grid.push_back(d);
    for (double d : grid) {
        const PowerPolicy p = exact_allocate(chs, db(d));
        p1.push_back(p.fractions[0]);
        p2.push_back(p.fractions[1]);
        std::printf("    %5.1f dB  p1 %.6f  p2 %.6f\n", d, p.fractions[0], p.fractions[1]);
    }
    const bool monotone = std::is_sorted(p1.begin(), p1.end(), std::less_equal<>());
    const double slope = std::log10(p2.back() / p2[p2.size() - 5]);
    const bool ok = monotone && p1.back() > 0.95 && std::abs(slope + 0.6) <= 0.1;
    return {ok, fmt("p1 monotone %s, p1(40 dB) %.4f, p2 slope over 30-40 dB %.4f (target -0.6 +- 0.1)",
                    monotone ? "yes" : "no", p1.back(), slope)};
}

Outcome kappa_mu_limit()
{
    ParallelChannels chs;
    chs.add(from_params(KappaMu{2.0, 1.0}), make_qam(4));
    chs.add(from_params(KappaMu{5.0, 1.0}), make_qam(4));
    const PowerPolicy exact = exact_allocate(chs, db(40.0));
    const PowerPolicy lim = limiting_allocate(chs);
    double worst = 0.0;
    for (std::size_t k = 0; k < 2; ++k)
        worst = std::max(worst, std::abs(exact.fractions[k] - lim.fractions[k]));
    return {worst <= 0.02, fmt("exact (%.4f, %.4f) vs limiting (%.4f, %.4f), max difference %.4f (tol 0.02)",
                               exact.fractions[0], exact.fractions[1], lim.fractions[0], lim.fractions[1], worst)};
}

Outcome distributional_validity()
{
    std::vector<FadingParams> families = parameter_sweep();
    families.push_back(EtaMu{2, -0.5, 1.0});
    families.push_back(EtaMu{2, 0.3, 1.0});
    families.push_back(Rician{0.0});
    families.push_back(Rician{3.0});
    bool ok = true;
    double worst_mass = 0.0, worst_mean = 0.0, worst_ks = 0.0;
    std::uint64_t seed = 1;
    for (const FadingParams& p : families) {
        const MixtureGamma mg = from_params(p);
        double mass = 0.0, mean = 0.0;
        for (const MixtureTerm& t : mg.terms()) {
            const double la = std::log(t.alpha), lz = std::log(t.zeta);
            mass += std::exp(la + std::lgamma(t.beta) - t.beta * lz);
            mean += std::exp(la + std::lgamma(t.beta + 1.0) - (t.beta + 1.0) * lz);
        }
        std::vector<double> x = sample(mg, seed++, 100000);
        std::sort(x.begin(), x.end());
        const double n = static_cast<double>(x.size());
        double ks = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double f = cdf(mg, x[i]);
            ks = std::max({ks, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
        }
        const bool this_ok = std::abs(mass - 1.0) <= 1e-9 && std::abs(mean - 1.0) <= 1e-6 && ks < 0.01;
        if (!this_ok)
            std::printf("    %s: mass %.3e mean %.3e KS %.4f OUT\n", mg.family_label().c_str(), mass - 1.0,
                        mean - 1.0, ks);
        ok = ok && this_ok;
        worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
        worst_mean = std::max(worst_mean, std::abs(mean - 1.0));
        worst_ks = std::max(worst_ks, ks);
    }
    return {ok, fmt("%zu families: max |mass-1| %.2e, max |mean-1| %.2e, max KS %.4f", families.size(), worst_mass,
                    worst_mean, worst_ks)};
}

} // namespace

int main(int argc, char** argv)
{
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria{
        {"I-MMSE identity", immse_identity},
        {"quadrature vs Monte Carlo", quadrature_vs_mc},
        {"high-SNR asymptote", asymptote_tracking},
        {"closed-form coefficient cross-check", corollary_cross_check},
        {"KKT solver vs grid search", kkt_vs_grid},
        {"Nakagami 1/4 allocation", nakagami_pair_allocation},
        {"kappa-mu limiting shares", kappa_mu_limit},
        {"distributional validity", distributional_validity},
    };

    std::size_t first = 0, last = criteria.size();
    if (argc > 1) {
        const int k = std::atoi(argv[1]);
        if (k < 1 || k > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "usage: %s [criterion 1-%zu]\n", argv[0], criteria.size());
            return 64;
        }
        first = static_cast<std::size_t>(k - 1);
        last = first + 1;
    }

    int failures = 0;
    for (std::size_t i = first; i < last; ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures;
}
