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

#include "mgami/error.hpp"
#include "mgami/json_io.hpp"

#include <doctest.h>

#include <cmath>

using namespace mgami;

TEST_SUITE("json_io")
{
    TEST_CASE("constellation from a point array")
    {
        const auto j = nlohmann::json::parse("[[1, 1], [1, -1], [-1, 1], [-1, -1]]");
        const Constellation c = constellation_from_json(j);
        CHECK(c.size() == 4);
        CHECK(c.d_min() == doctest::Approx(std::sqrt(2.0)));
        const Constellation back = constellation_from_json(to_json(c));
        REQUIRE(back.size() == c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            CHECK(std::abs(back.points()[i] - c.points()[i]) < 1e-15);
    }

    TEST_CASE("labelled constellation object")
    {
        const auto j = nlohmann::json::parse(R"({"label": "tri", "points": [[0, 1], [1, 0], [-1, 0]]})");
        CHECK(constellation_from_json(j).label() == "tri");
    }

    TEST_CASE("malformed constellations")
    {
        CHECK_THROWS_AS(constellation_from_json(nlohmann::json::parse("[[1, 1, 1], [0, 0]]")), argument_error);
        CHECK_THROWS_AS(constellation_from_json(nlohmann::json::parse("[[1, 1]]")), argument_error);
        CHECK_THROWS_AS(constellation_from_json(nlohmann::json::parse(R"({"points": 3})")), argument_error);
        CHECK_THROWS_AS(constellation_from_json(nlohmann::json::parse(R"([["a", 1], [0, 0]])")), argument_error);
    }

    TEST_CASE("policy serialization")
    {
        PowerPolicy p;
        p.fractions = {0.25, 0.75};
        p.multiplier = 0.5;
        p.method = AllocationMethod::exact_kkt;
        p.objective_bits = 3.5;
        const nlohmann::json j = to_json(p, 20.0);
        CHECK(j["method"] == "exact_kkt");
        CHECK(j["nu"] == 0.5);
        CHECK(j["fractions"][1] == 0.75);
        CHECK(j["objective_bits"] == 3.5);
        CHECK(j["gamma_bar_db"] == 20.0);

        p.method = AllocationMethod::limiting;
        p.multiplier = std::nan("");
        p.objective_bits = std::nan("");
        const nlohmann::json k = to_json(p, std::nan(""));
        CHECK(k["method"] == "limiting");
        CHECK(k["nu"].is_null());
        CHECK(k["objective_bits"].is_null());
        CHECK(k["gamma_bar_db"].is_null());
    }

    TEST_CASE("characterization serialization")
    {
        const AsymptoticCharacterization ch = characterize_asymptote(from_params(Nakagami{2.0}), make_qam(4));
        const nlohmann::json j = to_json(ch);
        CHECK(j["diversity_order"] == 2.0);
        CHECK(j["coeff"].get<double>() == doctest::Approx(ch.coeff));
        CHECK(j["mellin"]["argument"] == 2.0);
    }
}
