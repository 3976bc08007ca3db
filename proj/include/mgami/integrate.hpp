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

#ifndef MGAMI_INTEGRATE_HPP
#define MGAMI_INTEGRATE_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

namespace mgami {

struct IntegrationResult {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = false;
};

struct AdaptiveOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_panels = 4000;
};

// Global adaptive Gauss–Kronrod (G10/K21) integration over [cuts.front(), cuts.back()].
// Every interior cut starts a fresh panel, so known kinks or sharp transitions
// should be passed in `cuts`. The panel with the largest error estimate is
// bisected until the summed estimate meets the tolerance.
template <class F>
IntegrationResult integrate_adaptive(F&& f, std::span<const double> cuts, const AdaptiveOptions& opt = {})
{
    using rule = boost::math::quadrature::gauss_kronrod<double, 21>;
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    auto eval = [&](double a, double b) {
        double err = 0.0;
        const double v = rule::integrate(f, a, b, 0, 0.0, &err);
        return Panel{a, b, v, err};
    };

    std::vector<double> pts(cuts.begin(), cuts.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    IntegrationResult out;
    if (pts.size() < 2)
        return out;

    std::priority_queue<Panel> heap;
    double total = 0.0, error = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Panel p = eval(pts[i], pts[i + 1]);
        total += p.value;
        error += p.error;
        heap.push(p);
    }
    int panels = static_cast<int>(heap.size());
    while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) && panels < opt.max_panels) {
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            break;
        heap.pop();
        const Panel left = eval(worst.a, mid);
        const Panel right = eval(mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    // Re-sum to shed the cancellation accumulated by incremental updates.
    total = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.abs_error = error;
    out.converged = error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    return out;
}

template <class F>
IntegrationResult integrate_adaptive(F&& f, std::initializer_list<double> cuts, const AdaptiveOptions& opt = {})
{
    return integrate_adaptive(std::forward<F>(f), std::span<const double>(cuts.begin(), cuts.size()), opt);
}

} // namespace mgami

#endif
