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

#include <stdexcept>
#include <string>

namespace sptel {

/// Operand sizes disagree (qubit counts, matrix shapes).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A request exceeds the dense-simulation caps.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A vertex, link or path that the graph does not contain.
struct UnknownElementError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace sptel
