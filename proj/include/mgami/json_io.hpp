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

#ifndef MGAMI_JSON_IO_HPP
#define MGAMI_JSON_IO_HPP

#include "mgami/ami.hpp"
#include "mgami/constellation.hpp"
#include "mgami/mg_fading.hpp"
#include "mgami/power_alloc.hpp"

#include <json.hpp>

namespace mgami {

/// {"family": ..., "terms": [[alpha, beta, zeta], ...]}
nlohmann::json to_json(const MixtureGamma& mg);

/// Inverse of to_json(MixtureGamma); the distribution invariants are re-checked.
MixtureGamma mixture_from_json(const nlohmann::json& j);

/// Accepts [[re, im], ...] or {"label": ..., "points": [[re, im], ...]}.
Constellation constellation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Constellation& cons);

/// {method, nu, fractions, objective_bits, gamma_bar_db}; NaN values become null.
nlohmann::json to_json(const PowerPolicy& policy, double gamma_bar_db);

nlohmann::json to_json(const AsymptoticCharacterization& ch);

} // namespace mgami

#endif
