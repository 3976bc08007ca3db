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

#include "mgami/info_curve.hpp"

#include "mgami/awgn_info.hpp"
#include "mgami/error.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

namespace mgami {
namespace {

constexpr double snr_floor = 1e-6;
constexpr double decay_exponent = 600.0;

struct Table {
    std::vector<double> gap, mmse;
};

// Fills log-values with the linear decay removed; the grid is split across threads.
Table tabulate(const Constellation& cons, double u0, double du, std::size_t n, double decay)
{
    Table t{std::vector<double>(n), std::vector<double>(n)};
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double snr = std::exp(u0 + du * static_cast<double>(i));
            t.gap[i] = std::log(information_gap_nats(cons, snr)) + decay * snr;
            t.mmse[i] = std::log(mmse(cons, snr)) + decay * snr;
        }
    };
    const std::size_t threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> jobs;
    for (std::size_t k = 0; k < threads; ++k)
        jobs.push_back(std::async(std::launch::async, work, n * k / threads, n * (k + 1) / threads));
    for (auto& j : jobs)
        j.get();
    return t;
}

} // namespace

InfoCurve::InfoCurve(const Constellation& cons, int points_per_decade)
    : cons_(cons), decay_(0.25 * cons.d_min() * cons.d_min()), t_lo_(snr_floor),
      t_hi_(decay_exponent / decay_), mmse0_(mgami::mmse(cons, 0.0)), mmse_lo_(mgami::mmse(cons, snr_floor))
{
    if (points_per_decade < 8)
        throw argument_error("an information curve needs at least 8 points per decade");
    const double u0 = std::log(t_lo_);
    const double u1 = std::log(t_hi_);
    const double du = std::numbers::ln10 / points_per_decade;
    const auto n = static_cast<std::size_t>(std::ceil((u1 - u0) / du)) + 1;
    t_hi_ = std::exp(u0 + du * static_cast<double>(n - 1));
    Table t = tabulate(cons_, u0, du, n, decay_);
    log_gap_.emplace(t.gap.data(), n, u0, du);
    log_mmse_.emplace(t.mmse.data(), n, u0, du);
}

double InfoCurve::eval(const boost::math::interpolators::cardinal_cubic_b_spline<double>& s, double snr) const
{
    return std::exp(s(std::log(snr)) - decay_ * snr);
}

double InfoCurve::gap_nats(double snr) const
{
    if (!std::isfinite(snr) || snr < 0.0)
        throw argument_error("SNR must be finite and non-negative");
    if (snr < t_lo_)
        return std::log(static_cast<double>(cons_.size())) - mmse0_ * snr;
    if (snr > t_hi_)
        return 0.0;
    return eval(*log_gap_, snr);
}

double InfoCurve::gap_bits(double snr) const { return gap_nats(snr) / std::numbers::ln2; }

double InfoCurve::mutual_information(double snr) const
{
    return std::clamp(cons_.log2_size() - gap_bits(snr), 0.0, cons_.log2_size());
}

double InfoCurve::mmse(double snr) const
{
    if (!std::isfinite(snr) || snr < 0.0)
        throw argument_error("SNR must be finite and non-negative");
    if (snr < t_lo_)
        return mmse0_ + (mmse_lo_ - mmse0_) * snr / t_lo_;
    if (snr > t_hi_)
        return 1e-320;
    return std::clamp(eval(*log_mmse_, snr), 1e-320, 1.0);
}

std::shared_ptr<const InfoCurve> make_info_curve(const Constellation& cons)
{
    // Alphabets are identified by their normalized points; curves are immutable once built.
    static std::mutex lock;
    static std::map<std::vector<std::pair<double, double>>, std::shared_ptr<const InfoCurve>> cache;
    std::vector<std::pair<double, double>> key;
    for (const cdouble& p : cons.points())
        key.emplace_back(p.real(), p.imag());
    {
        std::lock_guard<std::mutex> guard(lock);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    auto curve = std::make_shared<const InfoCurve>(cons);
    std::lock_guard<std::mutex> guard(lock);
    return cache.emplace(std::move(key), std::move(curve)).first->second;
}

} // namespace mgami
