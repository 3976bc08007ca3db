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

#include "mgami/awgn_info.hpp"

#include "mgami/error.hpp"
#include "mgami/integrate.hpp"
#include "mgami/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace mgami {
namespace {

enum class Quantity { gap, mmse };

// Exponent margin beyond the nearest decision boundary, in units of the
// Gaussian exponent: the neglected mass is below exp(-margin) relative.
constexpr double margin_1d = 50.0;
constexpr double margin_2d = 40.0;
constexpr double mmse_floor = 1e-320;
constexpr double integral_rel_tol = 1e-12;

void check_snr(double snr)
{
    if (!std::isfinite(snr) || snr < 0.0)
        throw argument_error("SNR must be finite and non-negative, got " + std::to_string(snr));
}

// Conditional quantity at noise sample w for transmitted point j, given the
// differences d_k = x_j - x_k (k != j) and s = sqrt(snr). With
// E_k = -s^2 |d_k|^2 - 2 s Re(conj(w) d_k), the posterior of k is
// exp(E_k) / (1 + sum exp(E)).
double kernel(Quantity q, const std::vector<cdouble>& d, double s, double a, double b)
{
    double m = 0.0;
    thread_local std::vector<double> e;
    e.resize(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
        e[k] = -s * s * std::norm(d[k]) - 2.0 * s * (a * d[k].real() + b * d[k].imag());
        m = std::max(m, e[k]);
    }
    if (q == Quantity::gap) {
        double sum = 0.0;
        for (double ek : e)
            sum += std::exp(ek - m);
        return m == 0.0 ? std::log1p(sum) : m + std::log(std::exp(-m) + sum);
    }
    double den = std::exp(-m);
    cdouble num{};
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double w = std::exp(e[k] - m);
        den += w;
        num += w * d[k];
    }
    return std::norm(num) / (den * den);
}

std::vector<cdouble> differences(const std::vector<cdouble>& pts, std::size_t j)
{
    std::vector<cdouble> d;
    d.reserve(pts.size() - 1);
    for (std::size_t k = 0; k < pts.size(); ++k)
        if (k != j)
            d.push_back(pts[j] - pts[k]);
    return d;
}

// Average over j of the real-noise integral (1/sqrt(pi)) int e^{-v^2} kernel dv
// for a one-dimensional alphabet.
double average_1d(Quantity q, const std::vector<double>& levels, double s)
{
    std::vector<cdouble> pts(levels.begin(), levels.end());
    std::vector<double> per_point(pts.size(), 0.0);
    for (std::size_t j = 0; j < pts.size(); ++j) {
        // A point and its mirror image in a symmetric alphabet give the same integral.
        auto mirror = std::find_if(levels.begin(), levels.begin() + j,
                                   [&](double l) { return std::abs(l + levels[j]) < 1e-13; });
        if (mirror != levels.begin() + j) {
            per_point[j] = per_point[mirror - levels.begin()];
            continue;
        }
        const std::vector<cdouble> d = differences(pts, j);
        double r_min = std::numeric_limits<double>::infinity();
        for (const cdouble& dk : d)
            r_min = std::min(r_min, 0.5 * s * std::abs(dk.real()));
        if (r_min * r_min > 740.0)
            continue;
        const double v_max = std::sqrt(r_min * r_min + margin_1d);
        std::vector<double> cuts{-v_max, 0.0, v_max};
        for (const cdouble& dk : d) {
            const double c = -0.5 * s * dk.real();
            if (std::abs(c) < v_max)
                cuts.push_back(c);
        }
        auto f = [&](double v) { return std::exp(-v * v) * kernel(q, d, s, v, 0.0); };
        const IntegrationResult r = integrate_adaptive(f, cuts, {integral_rel_tol, 0.0, 4000});
        per_point[j] = r.value;
    }
    double total = 0.0;
    for (double v : per_point)
        total += v;
    return total / (std::sqrt(std::numbers::pi) * static_cast<double>(pts.size()));
}

// Points j whose difference sets coincide after rotating by the phase of x_j
// give identical integrals (PSK and other ring-symmetric alphabets).
std::vector<std::size_t> symmetry_classes(const std::vector<cdouble>& pts, std::vector<double>& multiplicity)
{
    std::vector<std::vector<cdouble>> canon;
    std::vector<std::size_t> reps;
    multiplicity.clear();
    auto canonical = [&](std::size_t j) {
        std::vector<cdouble> d = differences(pts, j);
        const double r = std::abs(pts[j]);
        const cdouble rot = r > 1e-12 ? std::conj(pts[j]) / r : cdouble(1.0);
        for (cdouble& x : d)
            x *= rot;
        std::sort(d.begin(), d.end(), [](cdouble a, cdouble b) {
            const double ra = std::round(a.real() * 1e9), rb = std::round(b.real() * 1e9);
            if (ra != rb)
                return ra < rb;
            return std::round(a.imag() * 1e9) < std::round(b.imag() * 1e9);
        });
        return d;
    };
    for (std::size_t j = 0; j < pts.size(); ++j) {
        std::vector<cdouble> c = canonical(j);
        bool found = false;
        for (std::size_t g = 0; g < canon.size() && !found; ++g) {
            bool same = true;
            for (std::size_t k = 0; k < c.size() && same; ++k)
                same = std::abs(c[k] - canon[g][k]) < 1e-9;
            if (same) {
                multiplicity[g] += 1.0;
                found = true;
            }
        }
        if (!found) {
            canon.push_back(std::move(c));
            reps.push_back(j);
            multiplicity.push_back(1.0);
        }
    }
    return reps;
}

// Nested adaptive integration over the complex plane for a general alphabet.
double average_2d(Quantity q, const std::vector<cdouble>& pts, double s)
{
    std::vector<double> mult;
    const std::vector<std::size_t> reps = symmetry_classes(pts, mult);
    double total = 0.0;
    for (std::size_t g = 0; g < reps.size(); ++g) {
        const std::vector<cdouble> d = differences(pts, reps[g]);
        double r_min = std::numeric_limits<double>::infinity();
        for (const cdouble& dk : d)
            r_min = std::min(r_min, 0.5 * s * std::abs(dk));
        if (r_min * r_min > 740.0)
            continue;
        const double box = std::sqrt(r_min * r_min + margin_2d);

        // Decision lines a Re(d) + b Im(d) = -s |d|^2 / 2 close enough to matter.
        std::vector<cdouble> lines;
        for (const cdouble& dk : d) {
            const double r = 0.5 * s * std::abs(dk);
            if (r * r <= r_min * r_min + margin_2d)
                lines.push_back(dk);
        }
        std::vector<double> outer{-box, 0.0, box};
        auto add_outer = [&](double a) {
            if (std::abs(a) < box)
                outer.push_back(a);
        };
        for (const cdouble& dk : lines)
            add_outer(-0.5 * s * dk.real());
        for (std::size_t i = 0; i < lines.size(); ++i)
            for (std::size_t k = i + 1; k < lines.size(); ++k) {
                const cdouble u = lines[i], v = lines[k];
                const double det = u.real() * v.imag() - u.imag() * v.real();
                if (std::abs(det) < 1e-12 * std::abs(u) * std::abs(v))
                    continue;
                const double cu = -0.5 * s * std::norm(u), cv = -0.5 * s * std::norm(v);
                add_outer((cu * v.imag() - cv * u.imag()) / det);
            }

        auto inner = [&](double a) {
            const double lim = std::sqrt(std::max(0.0, box * box - a * a));
            if (lim == 0.0)
                return 0.0;
            std::vector<double> cuts{-lim, 0.0, lim};
            for (const cdouble& dk : lines) {
                if (std::abs(dk.imag()) <= 1e-12 * std::abs(dk))
                    continue;
                const double b = (-0.5 * s * std::norm(dk) - a * dk.real()) / dk.imag();
                if (std::abs(b) < lim)
                    cuts.push_back(b);
            }
            auto f = [&](double b) { return std::exp(-a * a - b * b) * kernel(q, d, s, a, b); };
            return integrate_adaptive(f, cuts, {1e-10, 0.0, 2000}).value;
        };
        const IntegrationResult r = integrate_adaptive(inner, outer, {1e-11, 0.0, 2000});
        total += mult[g] * r.value;
    }
    return total / (std::numbers::pi * static_cast<double>(pts.size()));
}

// Splits the alphabet into independent real and imaginary level sets when it
// is a Cartesian product, trying the natural axes and a 45 degree rotation.
bool separate(const Constellation& cons, std::vector<double>& re, std::vector<double>& im)
{
    auto distinct = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        std::vector<double> out;
        for (double x : v)
            if (out.empty() || x - out.back() > 1e-9)
                out.push_back(x);
        return out;
    };
    for (double angle : {0.0, std::numbers::pi / 4.0}) {
        const cdouble rot = std::polar(1.0, -angle);
        std::vector<double> r, i;
        for (const cdouble& p : cons.points()) {
            const cdouble q = p * rot;
            r.push_back(q.real());
            i.push_back(q.imag());
        }
        re = distinct(r);
        im = distinct(i);
        if (re.size() * im.size() == cons.size())
            return true;
    }
    return false;
}

// Both quantities in nats (gap) or energy units (mmse) for snr > 0.
double evaluate(Quantity q, const Constellation& cons, double snr)
{
    const double s = std::sqrt(snr);
    std::vector<double> re, im;
    if (separate(cons, re, im)) {
        const double part_re = re.size() > 1 ? average_1d(q, re, s) : 0.0;
        double part_im = 0.0;
        if (im.size() > 1) {
            bool same = im.size() == re.size();
            for (std::size_t k = 0; same && k < re.size(); ++k)
                same = std::abs(re[k] - im[k]) < 1e-12;
            part_im = same ? part_re : average_1d(q, im, s);
        }
        return part_re + part_im;
    }
    return average_2d(q, cons.points(), s);
}

QuadratureRule hermite_rule(int order)
{
    static const QuadratureRule gh48 = gauss_hermite(48);
    return order == 48 ? gh48 : gauss_hermite(order);
}

double gauss_hermite_average(Quantity q, const Constellation& cons, double snr, int order)
{
    const QuadratureRule rule = hermite_rule(order);
    const double s = std::sqrt(snr);
    const auto& pts = cons.points();
    double total = 0.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const std::vector<cdouble> d = differences(pts, j);
        for (int p = 0; p < order; ++p)
            for (int r = 0; r < order; ++r)
                total += rule.weights[p] * rule.weights[r] * kernel(q, d, s, rule.nodes[p], rule.nodes[r]);
    }
    return total / (std::numbers::pi * static_cast<double>(pts.size()));
}

double mmse_at_zero(const Constellation& cons) { return 1.0 - std::norm(cons.mean()); }

} // namespace

double information_gap_nats(const Constellation& cons, double snr)
{
    check_snr(snr);
    if (snr == 0.0)
        return std::log(static_cast<double>(cons.size()));
    return std::max(0.0, evaluate(Quantity::gap, cons, snr));
}

double mutual_information(const Constellation& cons, double snr)
{
    const double gap = information_gap_nats(cons, snr);
    return std::clamp(cons.log2_size() - gap / std::numbers::ln2, 0.0, cons.log2_size());
}

double mmse(const Constellation& cons, double snr)
{
    check_snr(snr);
    if (snr == 0.0)
        return mmse_at_zero(cons);
    return std::clamp(evaluate(Quantity::mmse, cons, snr), mmse_floor, 1.0);
}

double mutual_information_gauss_hermite(const Constellation& cons, double snr, int order)
{
    check_snr(snr);
    if (snr == 0.0)
        return 0.0;
    const double gap = gauss_hermite_average(Quantity::gap, cons, snr, order);
    return std::clamp(cons.log2_size() - gap / std::numbers::ln2, 0.0, cons.log2_size());
}

double mmse_gauss_hermite(const Constellation& cons, double snr, int order)
{
    check_snr(snr);
    if (snr == 0.0)
        return mmse_at_zero(cons);
    return std::clamp(gauss_hermite_average(Quantity::mmse, cons, snr, order), mmse_floor, 1.0);
}

double mmse_is_derivative_check(const Constellation& cons, std::span<const double> grid)
{
    if (grid.size() < 3)
        throw argument_error("the derivative check needs at least three SNR points");
    for (double g : grid)
        if (!(g > 0.0) || !std::isfinite(g))
            throw argument_error("the derivative check needs strictly positive, finite SNRs");
    double worst = 0.0;
    for (double g : grid) {
        const double h = 1e-4 * g;
        const double derivative =
            (information_gap_nats(cons, g - h) - information_gap_nats(cons, g + h)) / (2.0 * h);
        const double m = mmse(cons, g);
        worst = std::max(worst, std::abs(derivative - m) / m);
    }
    return worst;
}

namespace {

// Bound on int_T^inf t^x mmse(t) dt from the envelope
// mmse(t) <= mmse(T) sqrt(T / t) e^{-c (t - T)}, c = d_min^2 / 8, which gives
// mmse(T) sqrt(T) e^{cT} c^{-a} Gamma(a, cT) with a = x + 1/2. Then
// Gamma(a, z) <= z^{a-1} e^{-z} z / (z - (a - 1)) for a >= 1, z > a - 1
// (without the last factor for a < 1).
double tail_bound(double m_T, double T, double x, double c)
{
    const double z = c * T;
    const double a = x + 0.5;
    double factor = 1.0;
    if (a > 1.0)
        factor = z > a - 1.0 ? z / (z - (a - 1.0)) : std::numeric_limits<double>::infinity();
    return factor * m_T * std::pow(T, x) / c;
}

} // namespace

MellinValue mellin_mmse(const Constellation& cons, double x, const MellinOptions& opt)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw argument_error("Mellin argument must be positive and finite, got " + std::to_string(x));
    if (opt.split_point < 0.0 || !std::isfinite(opt.split_point))
        throw argument_error("Mellin split point must be non-negative and finite");

    const double dmin2 = cons.d_min() * cons.d_min();
    const double c = dmin2 / 8.0;
    const bool fixed = opt.split_point > 0.0;
    double T = fixed ? opt.split_point : 8.0 * (x + 4.0) / dmin2;

    // [0, t_lo]: mmse is within O(t_lo) of mmse(0) there.
    const double t_lo = std::min(1e-8, 1e-3 * T);
    double value = std::pow(t_lo, x + 1.0) / (x + 1.0) * mmse_at_zero(cons);
    double quad_error = std::pow(t_lo, x + 2.0);

    // Integrate in u = ln t so that the many decades below T are resolved evenly.
    auto g = [&](double u) {
        const double t = std::exp(u);
        return std::exp((x + 1.0) * u) * mmse(cons, t);
    };
    auto add_piece = [&](double lo, double hi) {
        std::vector<double> cuts;
        const double u0 = std::log(lo), u1 = std::log(hi);
        const int n = std::max(1, static_cast<int>(std::ceil(u1 - u0)));
        for (int i = 0; i <= n; ++i)
            cuts.push_back(u0 + (u1 - u0) * i / n);
        const IntegrationResult r = integrate_adaptive(g, cuts, {opt.rel_tol, 0.0, 4000});
        value += r.value;
        quad_error += r.abs_error;
    };

    add_piece(t_lo, T);
    double tail = tail_bound(mmse(cons, T), T, x, c);
    for (int doubling = 0; !fixed && tail > 1e-10 * value && doubling < 40; ++doubling) {
        add_piece(T, 2.0 * T);
        T *= 2.0;
        tail = tail_bound(mmse(cons, T), T, x, c);
    }

    MellinValue out{x, value, quad_error + tail, T};
    if (!(out.value > 0.0) || !(out.est_abs_error < 1e-6 * std::max(1.0, out.value)))
        throw numerical_error("Mellin transform of the MMSE did not converge at x = " + std::to_string(x) +
                              " (error estimate " + std::to_string(out.est_abs_error) + ")");
    return out;
}

} // namespace mgami
