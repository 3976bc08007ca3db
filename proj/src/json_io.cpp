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

#include "mgami/json_io.hpp"

#include "mgami/error.hpp"

#include <cmath>

namespace mgami {
namespace {

nlohmann::json number(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    return v;
}

} // namespace

nlohmann::json to_json(const MixtureGamma& mg)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const MixtureTerm& t : mg.terms())
        terms.push_back({t.alpha, t.beta, t.zeta});
    return {{"family", mg.family_label()}, {"terms", terms}};
}

MixtureGamma mixture_from_json(const nlohmann::json& j)
{
    try {
        if (!j.is_object() || !j.contains("terms"))
            throw argument_error("mixture JSON needs a \"terms\" array");
        std::vector<MixtureTerm> terms;
        for (const auto& t : j.at("terms")) {
            if (!t.is_array() || t.size() != 3)
                throw argument_error("each mixture term must be [alpha, beta, zeta]");
            terms.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
        }
        return MixtureGamma(std::move(terms), j.value("family", std::string("custom")));
    } catch (const nlohmann::json::exception& e) {
        throw argument_error(std::string("malformed mixture JSON: ") + e.what());
    }
}

Constellation constellation_from_json(const nlohmann::json& j)
{
    try {
        const nlohmann::json& pts = j.is_object() ? j.at("points") : j;
        if (!pts.is_array())
            throw argument_error("constellation JSON must be an array of [re, im] pairs");
        std::vector<cdouble> points;
        for (const auto& p : pts) {
            if (!p.is_array() || p.size() != 2)
                throw argument_error("each constellation point must be [re, im]");
            points.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        const std::string label = j.is_object() ? j.value("label", std::string("custom")) : "custom";
        return make_custom(points, label);
    } catch (const nlohmann::json::exception& e) {
        throw argument_error(std::string("malformed constellation JSON: ") + e.what());
    }
}

nlohmann::json to_json(const Constellation& cons)
{
    nlohmann::json pts = nlohmann::json::array();
    for (const cdouble& p : cons.points())
        pts.push_back({p.real(), p.imag()});
    return {{"label", cons.label()}, {"points", pts}, {"d_min", cons.d_min()}};
}

nlohmann::json to_json(const PowerPolicy& policy, double gamma_bar_db)
{
    return {{"method", to_string(policy.method)},
            {"nu", number(policy.multiplier)},
            {"fractions", policy.fractions},
            {"objective_bits", number(policy.objective_bits)},
            {"gamma_bar_db", number(gamma_bar_db)}};
}

nlohmann::json to_json(const AsymptoticCharacterization& ch)
{
    return {{"diversity_order", ch.diversity_order},
            {"coeff", ch.coeff},
            {"coeff_bits", ch.coeff_bits},
            {"coeff_fading_part", ch.coeff_fading_part},
            {"mellin",
             {{"argument", ch.mellin.argument},
              {"value", ch.mellin.value},
              {"est_abs_error", ch.mellin.est_abs_error},
              {"split_point", ch.mellin.split_point}}},
            {"coding_gain", ch.coding_gain},
            {"ami_limit_bits", ch.ami_limit_bits}};
}

} // namespace mgami
