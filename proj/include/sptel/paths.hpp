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
#include <vector>

#include "sptel/graph.hpp"
#include "sptel/symmetry.hpp"

namespace sptel {

/// Symmetry pair attached to a path. Stabilizers at even path positions
/// multiply to the x-type string (X on the input), odd positions to the z-type
/// string (Z on the input).
struct PathSymmetry {
    std::string path_id;
    std::string label;
    std::vector<int> x_subset;
    std::vector<int> z_subset;
    PauliString x_string;
    PauliString z_string;
    /// True when both strings carry X/Z on the input and, on every measured
    /// vertex, only identity or the measured axis.
    bool measurable = false;
};

PathSymmetry path_symmetry(const GraphSpec& g, const NamedPath& p);
std::vector<PathSymmetry> enumerate_paths(const GraphSpec& g);

/// All distinct path strings as a labelled group.
SymmetryGroup path_symmetry_group(const GraphSpec& g);

}  // namespace sptel
