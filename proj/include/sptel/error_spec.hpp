// Copyright 2026 The sptel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sptel/pauli.hpp"

namespace sptel {

/// Coherent ZZ-crosstalk e^{-i eps Z_a Z_b}. On a graph link it rides on the
/// Ising gate; on any other vertex pair it is an idle coupling.
struct ZZCrosstalk {
    int a = 0;
    int b = 0;
    double epsilon = 0.0;
    friend bool operator==(const ZZCrosstalk&, const ZZCrosstalk&) = default;
};

/// Coherent single-qubit error e^{-i theta P / 2} applied after preparation.
struct SingleQubitError {
    int vertex = 0;
    Letter axis = Letter::X;
    double theta = 0.0;
    friend bool operator==(const SingleQubitError&, const SingleQubitError&) = default;
};

/// Two-qubit depolarizing channel with probability p after every entangling gate.
struct Depolarizing2q {
    double p = 0.0;
    friend bool operator==(const Depolarizing2q&, const Depolarizing2q&) = default;
};

using ErrorSpec = std::variant<ZZCrosstalk, SingleQubitError, Depolarizing2q>;

/// Parses the CLI form: `zz:3,5,0.3`, `x1q:7,X,0.4`, `depol2q:0.02`.
ErrorSpec parse_error_spec(std::string_view text);
std::string to_string(const ErrorSpec& e);
/// Strength parameter of the error (epsilon, theta or p).
double error_strength(const ErrorSpec& e);
ErrorSpec with_strength(ErrorSpec e, double value);

}  // namespace sptel
