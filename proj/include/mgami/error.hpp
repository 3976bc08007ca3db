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

#ifndef MGAMI_ERROR_HPP
#define MGAMI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mgami {

// Invalid input: out-of-range parameters, malformed constellations, bad specs.
class argument_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation could not reach its accuracy target.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A truncated mixture could not meet the distribution invariants.
class truncation_error : public numerical_error {
public:
    truncation_error(const std::string& what, double achieved)
        : numerical_error(what), achieved_(achieved) {}
    double achieved_error() const noexcept { return achieved_; }

private:
    double achieved_;
};

// Root-finding / KKT solver did not converge.
class solver_error : public numerical_error {
public:
    solver_error(const std::string& what, double residual)
        : numerical_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace mgami

#endif
