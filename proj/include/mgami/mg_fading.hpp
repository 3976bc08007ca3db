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

#ifndef MGAMI_MG_FADING_HPP
#define MGAMI_MG_FADING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mgami {

/// One term alpha a^{beta - 1} e^{-zeta a} of a mixture-gamma density.
struct MixtureTerm {
    double alpha;
    double beta;
    double zeta;
};

/// Mixture-gamma density of the fading power a = |h|^2.
///
/// Construction checks the three distribution invariants: unit total mass
/// (1e-9), unit mean (1e-6) and a spacing of at least one between distinct
/// shape parameters. Violations throw argument_error.
class MixtureGamma {
public:
    MixtureGamma(std::vector<MixtureTerm> terms, std::string family_label);

    const std::vector<MixtureTerm>& terms() const noexcept { return terms_; }
    const std::string& family_label() const noexcept { return label_; }
    int truncation() const noexcept { return static_cast<int>(terms_.size()); }

    /// Component probabilities alpha Gamma(beta) zeta^{-beta}.
    const std::vector<double>& weights() const noexcept { return weights_; }
    double total_mass() const noexcept;
    double mean() const noexcept;
    double min_beta() const noexcept;

private:
    std::vector<MixtureTerm> terms_;
    std::vector<double> weights_;
    std::string label_;
};

struct Nakagami {
    double m;
};
/// format 1: eta > 0, h = (2 + 1/eta + eta) / 4, H = (1/eta - eta) / 4.
/// format 2: -1 < eta < 1, h = 1 / (1 - eta^2), H = eta / (1 - eta^2).
struct EtaMu {
    int format;
    double eta;
    double mu;
};
struct KappaMu {
    double kappa;
    double mu;
};
struct Rician {
    double K;
};
/// Generalized-K fading, discretized with an order-N Gauss–Laguerre rule.
struct KG {
    double k;
    double m;
    int order;
};

using FadingParams = std::variant<Nakagami, EtaMu, KappaMu, Rician, KG>;

/// Checks the parameter domain of each family; throws argument_error.
void validate(const FadingParams& p);

/// Human-readable label such as "kappa-mu(kappa=1,mu=2)".
std::string describe(const FadingParams& p);

/// Default number of retained terms for the infinite eta-mu and kappa-mu mixtures.
inline constexpr int default_truncation = 50;

/// Builds the mixture for a fading family.
///
/// For eta-mu and kappa-mu, `truncation` is the number of retained terms. When
/// it is omitted, 50 terms are used and the count is doubled until the mean is
/// within 1e-9 of one. An explicit count is used as given and throws
/// truncation_error if the unit-mean error exceeds 1e-6. For K_G the count is
/// the Laguerre order and defaults to KG::order. Weights are always
/// renormalized over the retained terms; terms whose weight underflows to zero
/// are dropped.
MixtureGamma from_params(const FadingParams& p, std::optional<int> truncation = std::nullopt);

/// +infinity at a = 0 when some beta < 1. Throws argument_error for a < 0.
double pdf(const MixtureGamma& mg, double a);
double cdf(const MixtureGamma& mg, double a);

/// Seeded i.i.d. draws: pick a component by weight, then Gamma(beta, rate zeta).
std::vector<double> sample(const MixtureGamma& mg, std::uint64_t seed, std::size_t count);

} // namespace mgami

#endif
