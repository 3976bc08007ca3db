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

#include "mgami/quadrature.hpp"

#include "mgami/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

namespace mgami {
namespace {

// Three-term recurrence of the orthonormal polynomials:
//   off[k+1] p_{k+1}(x) = (x - diag[k]) p_k(x) - off[k] p_{k-1}(x),
// p_0 = 1/sqrt(mu0). off[0] is unused.
struct Jacobi {
    std::vector<double> diag;
    std::vector<double> off;
    double mu0;
};

Jacobi laguerre_jacobi(int n)
{
    Jacobi j{std::vector<double>(n + 1), std::vector<double>(n + 1), 1.0};
    for (int k = 0; k <= n; ++k) {
        j.diag[k] = 2.0 * k + 1.0;
        j.off[k] = static_cast<double>(k);
    }
    return j;
}

Jacobi hermite_jacobi(int n)
{
    Jacobi j{std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1), std::sqrt(std::numbers::pi)};
    for (int k = 0; k <= n; ++k)
        j.off[k] = std::sqrt(0.5 * k);
    return j;
}

struct RecurrenceValue {
    double p;         // p_n(x), scaled
    double dp;        // p_n'(x), same scale
    double log_sumsq; // ln sum_{k<n} p_k(x)^2, unscaled
};

// Runs the recurrence to degree n with periodic rescaling; p and dp share a
// scale factor so their ratio is exact, while log_sumsq is absolute.
RecurrenceValue evaluate(const Jacobi& j, int n, double x)
{
    constexpr double big = 1e150;
    double p_prev = 0.0, dp_prev = 0.0;
    double p = 1.0 / std::sqrt(j.mu0), dp = 0.0;
    double log_scale = 0.0; // true value = stored value * exp(log_scale)
    double sumsq = 0.0;     // in units of exp(2 log_scale)
    for (int k = 0; k < n; ++k) {
        sumsq += p * p;
        const double p_next = ((x - j.diag[k]) * p - j.off[k] * p_prev) / j.off[k + 1];
        const double dp_next = (p + (x - j.diag[k]) * dp - j.off[k] * dp_prev) / j.off[k + 1];
        p_prev = p;
        dp_prev = dp;
        p = p_next;
        dp = dp_next;
        if (std::abs(p) > big || std::abs(dp) > big) {
            p /= big;
            dp /= big;
            p_prev /= big;
            dp_prev /= big;
            sumsq /= big * big;
            log_scale += std::log(big);
        }
    }
    return {p, dp, std::log(sumsq) + 2.0 * log_scale};
}

QuadratureRule build_rule(RuleKind kind, int order)
{
    if (order < 1 || order > max_rule_order)
        throw argument_error("quadrature order must lie in [1, " + std::to_string(max_rule_order) +
                             "], got " + std::to_string(order));

    const Jacobi j = kind == RuleKind::laguerre ? laguerre_jacobi(order) : hermite_jacobi(order);

    Eigen::VectorXd diag(order);
    Eigen::VectorXd sub(order > 1 ? order - 1 : 0);
    for (int k = 0; k < order; ++k)
        diag[k] = j.diag[k];
    for (int k = 1; k < order; ++k)
        sub[k - 1] = j.off[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw numerical_error("tridiagonal eigenvalue solver failed");

    QuadratureRule rule{kind, order, std::vector<double>(order), std::vector<double>(order),
                        std::vector<double>(order)};
    for (int i = 0; i < order; ++i) {
        double x = solver.eigenvalues()[i];
        for (int it = 0; it < 20; ++it) {
            const RecurrenceValue v = evaluate(j, order, x);
            if (v.dp == 0.0)
                break;
            const double step = v.p / v.dp;
            x -= step;
            if (std::abs(step) <= 4e-16 * std::max(std::abs(x), 1e-300))
                break;
        }
        rule.nodes[i] = x;
        rule.log_weights[i] = -evaluate(j, order, x).log_sumsq;
    }

    if (kind == RuleKind::hermite) {
        for (int i = 0; i < order / 2; ++i) {
            const int m = order - 1 - i;
            const double x = 0.5 * (rule.nodes[m] - rule.nodes[i]);
            const double lw = 0.5 * (rule.log_weights[m] + rule.log_weights[i]);
            rule.nodes[i] = -x;
            rule.nodes[m] = x;
            rule.log_weights[i] = rule.log_weights[m] = lw;
        }
        if (order % 2 == 1)
            rule.nodes[order / 2] = 0.0;
    }
    for (int i = 0; i < order; ++i)
        rule.weights[i] = std::exp(rule.log_weights[i]);
    return rule;
}

} // namespace

QuadratureRule gauss_laguerre(int order) { return build_rule(RuleKind::laguerre, order); }

QuadratureRule gauss_hermite(int order) { return build_rule(RuleKind::hermite, order); }

} // namespace mgami
