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

#ifndef MGAMI_CONSTELLATION_HPP
#define MGAMI_CONSTELLATION_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace mgami {

using cdouble = std::complex<double>;

/// Equiprobable finite input alphabet with unit average energy.
///
/// Immutable once built; construct through make_qam, make_psk or make_custom.
class Constellation {
public:
    const std::vector<cdouble>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    const std::string& label() const noexcept { return label_; }
    double d_min() const noexcept { return d_min_; }
    double d_max() const noexcept { return d_max_; }
    double log2_size() const noexcept;
    cdouble mean() const noexcept;

    friend Constellation make_qam(int m);
    friend Constellation make_psk(int m);
    friend Constellation make_custom(std::span<const cdouble> points, std::string label);

private:
    Constellation(std::vector<cdouble> points, std::string label);

    std::vector<cdouble> points_;
    std::string label_;
    double d_min_ = 0.0;
    double d_max_ = 0.0;
};

/// Square M-QAM, M in {4, 16, 64, 256}.
Constellation make_qam(int m);

/// M-th roots of unity, M >= 2.
Constellation make_psk(int m);

/// Arbitrary alphabet, rescaled to unit average energy. Points closer than
/// 1e-12 after rescaling are rejected.
Constellation make_custom(std::span<const cdouble> points, std::string label = "custom");

/// Named alphabets accepted on the command line: qam4, qam16, qam64, qam256,
/// psk<M> (psk2 is BPSK), bpsk, qpsk.
Constellation constellation_by_name(const std::string& name);

} // namespace mgami

#endif
