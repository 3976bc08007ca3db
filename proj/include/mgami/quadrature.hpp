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

#ifndef MGAMI_QUADRATURE_HPP
#define MGAMI_QUADRATURE_HPP

#include <vector>

namespace mgami {

enum class RuleKind { laguerre, hermite };

inline constexpr int max_rule_order = 200;

/// Gaussian quadrature rule.
///
/// laguerre: integrates g(t) e^{-t} over [0, inf); weights sum to 1.
/// hermite:  integrates g(t) e^{-t^2} over the real line; weights sum to sqrt(pi).
///
/// Nodes are strictly increasing. `log_weights` holds ln(weight) and stays
/// finite where the weight itself underflows (high-order Laguerre tails).
struct QuadratureRule {
    RuleKind kind;
    int order;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> log_weights;
};

/// Order-N Gauss–Laguerre rule, 1 <= N <= 200. Throws argument_error otherwise.
QuadratureRule gauss_laguerre(int order);

/// Order-N Gauss–Hermite rule for weight e^{-t^2}, 1 <= N <= 200.
QuadratureRule gauss_hermite(int order);

} // namespace mgami

#endif
