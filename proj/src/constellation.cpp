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

#include "mgami/constellation.hpp"

#include "mgami/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mgami {

Constellation::Constellation(std::vector<cdouble> points, std::string label)
    : points_(std::move(points)), label_(std::move(label))
{
    if (points_.size() < 2)
        throw argument_error("a constellation needs at least two points");
    for (const cdouble& p : points_)
        if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
            throw argument_error("constellation points must be finite");

    double energy = 0.0;
    for (const cdouble& p : points_)
        energy += std::norm(p);
    energy /= static_cast<double>(points_.size());
    if (!(energy > 0.0))
        throw argument_error("constellation has zero average energy");
    const double scale = 1.0 / std::sqrt(energy);
    for (cdouble& p : points_)
        p *= scale;

    d_min_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j) {
            const double d = std::abs(points_[i] - points_[j]);
            d_min_ = std::min(d_min_, d);
            d_max_ = std::max(d_max_, d);
        }
    // The high-SNR bounds need a strictly positive minimum distance.
    if (d_min_ < 1e-12)
        throw argument_error("constellation has coincident points (minimum distance " + std::to_string(d_min_) +
                             " after normalization)");
}

double Constellation::log2_size() const noexcept { return std::log2(static_cast<double>(points_.size())); }

cdouble Constellation::mean() const noexcept
{
    cdouble s{};
    for (const cdouble& p : points_)
        s += p;
    return s / static_cast<double>(points_.size());
}

Constellation make_qam(int m)
{
    if (m != 4 && m != 16 && m != 64 && m != 256)
        throw argument_error("square QAM order must be 4, 16, 64 or 256, got " + std::to_string(m));
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
    std::vector<cdouble> pts;
    pts.reserve(m);
    for (int i = 0; i < side; ++i)
        for (int q = 0; q < side; ++q)
            pts.emplace_back(2.0 * i - (side - 1), 2.0 * q - (side - 1));
    return Constellation(std::move(pts), std::to_string(m) + "-QAM");
}

Constellation make_psk(int m)
{
    if (m < 2)
        throw argument_error("PSK order must be at least 2, got " + std::to_string(m));
    std::vector<cdouble> pts;
    pts.reserve(m);
    for (int k = 0; k < m; ++k) {
        const double phase = 2.0 * std::numbers::pi * k / m;
        double re = std::cos(phase), im = std::sin(phase);
        // Snap the rounding residue of exact axis crossings.
        if (std::abs(re) < 1e-15)
            re = 0.0;
        if (std::abs(im) < 1e-15)
            im = 0.0;
        pts.emplace_back(re, im);
    }
    return Constellation(std::move(pts), m == 2 ? "BPSK" : std::to_string(m) + "-PSK");
}

Constellation make_custom(std::span<const cdouble> points, std::string label)
{
    return Constellation(std::vector<cdouble>(points.begin(), points.end()), std::move(label));
}

Constellation constellation_by_name(const std::string& name)
{
    std::string n;
    for (char c : name)
        n.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (n == "bpsk")
        return make_psk(2);
    if (n == "qpsk")
        return make_qam(4);
    auto tail_int = [&](std::size_t prefix) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(n.substr(prefix), &used);
            if (used + prefix != n.size())
                throw argument_error("");
            return v;
        } catch (const std::exception&) {
            throw argument_error("unrecognized constellation '" + name + "'");
        }
    };
    if (n.rfind("qam", 0) == 0)
        return make_qam(tail_int(3));
    if (n.rfind("psk", 0) == 0)
        return make_psk(tail_int(3));
    throw argument_error("unrecognized constellation '" + name + "'");
}

} // namespace mgami
