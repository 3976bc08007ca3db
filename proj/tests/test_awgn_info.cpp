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

#include "oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mgami;

namespace {

Constellation rotated(const Constellation& c, double angle)
{
    std::vector<cdouble> p;
    for (const cdouble& x : c.points())
        p.push_back(x * std::polar(1.0, angle));
    return make_custom(p);
}

} // namespace

TEST_SUITE("awgn_info")
{
    TEST_CASE("zero SNR")
    {
        for (const Constellation& c : {make_psk(2), make_qam(4), make_qam(16), make_psk(8)}) {
            CHECK(mutual_information(c, 0.0) == 0.0);
            CHECK(mmse(c, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(information_gap_nats(c, 0.0) == doctest::Approx(std::log(c.size())));
        }
    }

    TEST_CASE("mmse at zero SNR is the input variance")
    {
        const std::vector<cdouble> shifted{{0.0, 0.0}, {2.0, 0.0}};
        const Constellation c = make_custom(shifted);
        // Points 0 and sqrt 2 after normalization: variance 1/2.
        CHECK(mmse(c, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(mmse(c, 1e-6) == doctest::Approx(0.5).epsilon(1e-5));
    }

    TEST_CASE("saturation at high SNR")
    {
        CHECK(std::abs(mutual_information(make_qam(4), 1000.0) - 2.0) < 1e-6);
        CHECK(std::abs(mutual_information(make_qam(16), std::pow(10.0, 3.5)) - 4.0) < 1e-6);
    }

    TEST_CASE("BPSK mutual information against Monte Carlo")
    {
        const Constellation b = make_psk(2);
        const oracle::Estimate e = oracle::mi_monte_carlo(b, 1.0, 10'000'000, 11);
        CHECK(std::abs(mutual_information(b, 1.0) - e.mean) < 3.0 * e.std_error);
    }

    TEST_CASE("non-product alphabets against Monte Carlo")
    {
        const Constellation p8 = make_psk(8);
        const oracle::Estimate e = oracle::mi_monte_carlo(p8, 3.0, 2'000'000, 5);
        CHECK(std::abs(mutual_information(p8, 3.0) - e.mean) < 3.0 * e.std_error);
    }

    TEST_CASE("BPSK mmse against the scalar tanh integral")
    {
        // x = +-1, real noise component N(0, 1/2): mmse = 1 - E tanh(2 sqrt(g) y), y ~ N(sqrt(g), 1/2).
        for (double g : {0.3, 1.0, 4.0}) {
            const double s = std::sqrt(g);
            auto integrand = [&](double y) {
                return std::tanh(2.0 * s * y) * std::exp(-(y - s) * (y - s)) / std::sqrt(std::numbers::pi);
            };
            double err = 0.0;
            const double e = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                integrand, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 15,
                1e-14, &err);
            CHECK(std::abs(mmse(make_psk(2), g) - (1.0 - e)) < 1e-8);
        }
    }

    TEST_CASE("product and rotated alphabets agree")
    {
        // A generic rotation removes the product structure and forces the 2-D path.
        const Constellation q = make_qam(16);
        const Constellation r = rotated(q, 0.3);
        for (double g : {0.5, 5.0, 40.0, 400.0}) {
            CHECK(information_gap_nats(r, g) == doctest::Approx(information_gap_nats(q, g)).epsilon(1e-9));
            CHECK(mmse(r, g) == doctest::Approx(mmse(q, g)).epsilon(1e-9));
        }
        const Constellation p4 = make_psk(4);
        const Constellation q4 = make_qam(4);
        CHECK(mmse(p4, 7.0) == doctest::Approx(mmse(q4, 7.0)).epsilon(1e-12));
    }

    TEST_CASE("Gauss-Hermite evaluation at low SNR")
    {
        for (const Constellation& c : {make_qam(4), make_psk(8), make_qam(16)}) {
            CHECK(std::abs(mutual_information_gauss_hermite(c, 0.2) - mutual_information(c, 0.2)) < 1e-10);
            CHECK(mmse_gauss_hermite(c, 0.2) == doctest::Approx(mmse(c, 0.2)).epsilon(1e-9));
        }
        CHECK_THROWS_AS(mutual_information_gauss_hermite(make_qam(4), 1.0, 0), argument_error);
    }

    TEST_CASE("mmse decays no slower than the distance envelope")
    {
        const Constellation q = make_qam(4);
        const double d2 = q.d_min() * q.d_min();
        auto scaled = [&](double g) { return mmse(q, g) * std::sqrt(g) * std::exp(g * d2 / 8.0); };
        const double c = scaled(20.0);
        CHECK(scaled(40.0) <= c);
        CHECK(scaled(80.0) <= c);
    }

    TEST_CASE("range, monotonicity and concavity")
    {
        for (const Constellation& c : {make_psk(2), make_qam(4), make_qam(16), make_psk(8)}) {
            double prev_i = -1.0, prev_m = 2.0;
            std::vector<double> grid, info;
            for (double db = -20.0; db <= 40.0; db += 2.5) {
                const double g = std::pow(10.0, db / 10.0);
                const double i = mutual_information(c, g);
                const double m = mmse(c, g);
                CHECK(i >= 0.0);
                CHECK(i <= c.log2_size());
                CHECK(m > 0.0);
                CHECK(m <= 1.0);
                CHECK(i >= prev_i);
                CHECK(m <= prev_m);
                prev_i = i;
                prev_m = m;
                grid.push_back(g);
                info.push_back(i);
            }
            for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
                const double w = (grid[k] - grid[k - 1]) / (grid[k + 1] - grid[k - 1]);
                CHECK(info[k] >= (1.0 - w) * info[k - 1] + w * info[k + 1] - 1e-12);
            }
        }
    }

    TEST_CASE("derivative of the information is the mmse")
    {
        const std::vector<double> small{0.5, 1.0, 2.0};
        CHECK(mmse_is_derivative_check(make_psk(2), small) < 1e-4);
        const std::vector<double> around_one{0.9, 1.0, 1.1};
        CHECK(mmse_is_derivative_check(make_qam(4), around_one) < 1e-4);
        const std::vector<double> grid{0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
        for (const Constellation& c : {make_psk(2), make_qam(4), make_qam(16), make_psk(8)})
            CHECK(mmse_is_derivative_check(c, grid) < 1e-4);
    }

    TEST_CASE("derivative check preconditions")
    {
        const std::vector<double> two{1.0, 2.0};
        CHECK_THROWS_AS(mmse_is_derivative_check(make_qam(4), two), argument_error);
        const std::vector<double> with_zero{0.0, 1.0, 2.0};
        CHECK_THROWS_AS(mmse_is_derivative_check(make_qam(4), with_zero), argument_error);
    }

    TEST_CASE("invalid SNR")
    {
        CHECK_THROWS_AS(mutual_information(make_qam(4), -1.0), argument_error);
        CHECK_THROWS_AS(mmse(make_qam(4), std::nan("")), argument_error);
        CHECK_THROWS_AS(information_gap_nats(make_qam(4), std::numeric_limits<double>::infinity()), argument_error);
    }

    TEST_CASE("very high SNR stays positive")
    {
        const double m = mmse(make_qam(4), 1e7);
        CHECK(m > 0.0);
        CHECK(m <= 1e-300);
        CHECK(mutual_information(make_qam(4), 1e7) == 2.0);
    }

    TEST_CASE("Mellin transform against a dense log-grid trapezoid")
    {
        struct Case {
            Constellation cons;
            double x;
        };
        for (const Case& k : {Case{make_psk(2), 1.0}, Case{make_qam(4), 2.0}, Case{make_qam(16), 0.5}}) {
            const MellinValue v = mellin_mmse(k.cons, k.x);
            const double upper = 400.0 / (k.cons.d_min() * k.cons.d_min());
            const Constellation& c = k.cons;
            const double x = k.x;
            const double ref = oracle::log_trapezoid([&](double t) { return std::pow(t, x) * mmse(c, t); }, 1e-9,
                                                     upper, 20000) +
                               std::pow(1e-9, x + 1.0) / (x + 1.0);
            CHECK(v.value == doctest::Approx(ref).epsilon(1e-5));
            CHECK(v.value > 0.0);
            CHECK(v.est_abs_error < 1e-6 * std::max(1.0, v.value));
            CHECK(v.argument == x);
        }
    }

    TEST_CASE("Mellin transform scales with the alphabet")
    {
        // 4-QAM is two BPSK components at half the SNR each: M4(x) = 2^{x+1} M2(x).
        for (double x : {0.5, 1.0, 3.0}) {
            const double b = mellin_mmse(make_psk(2), x).value;
            const double q = mellin_mmse(make_qam(4), x).value;
            CHECK(q == doctest::Approx(std::pow(2.0, x + 1.0) * b).epsilon(1e-9));
        }
    }

    TEST_CASE("Mellin transform converges as the split point doubles")
    {
        for (const Constellation& c : {make_psk(2), make_qam(4), make_qam(16)}) {
            for (double x : {1.0, 2.0}) {
                const MellinValue automatic = mellin_mmse(c, x);
                const MellinValue at_t = mellin_mmse(c, x, {automatic.split_point, 1e-11});
                const MellinValue at_2t = mellin_mmse(c, x, {2.0 * automatic.split_point, 1e-11});
                CHECK(std::abs(at_t.value - at_2t.value) < at_t.est_abs_error);
            }
        }
    }

    TEST_CASE("Mellin preconditions")
    {
        CHECK_THROWS_AS(mellin_mmse(make_qam(4), 0.0), argument_error);
        CHECK_THROWS_AS(mellin_mmse(make_qam(4), -1.0), argument_error);
        // A split far too early leaves a tail bound above tolerance.
        CHECK_THROWS_AS(mellin_mmse(make_qam(4), 2.0, {0.5, 1e-11}), numerical_error);
    }
}
