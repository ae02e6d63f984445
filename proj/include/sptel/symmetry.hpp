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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sptel/error_spec.hpp"
#include "sptel/graph.hpp"
#include "sptel/pauli.hpp"

namespace sptel {

struct StabilizerSet {
    std::vector<PauliString> generators;  // one per vertex, in tensor-position order
    std::string graph_id;
};

/// X or Y (per vertex kind) at v, Z on every neighbour, phase +1.
PauliString stabilizer_for_vertex(const GraphSpec& g, int v);
StabilizerSet stabilizers(const GraphSpec& g);

/// Ordered product of K_j over `subset` (ascending ids). Throws on an empty subset
/// or an unknown vertex.
PauliString symmetry_from_subset(const GraphSpec& g, std::span<const int> subset);

enum class SymmetryType { XType, ZType };

struct SymmetryMembership {
    std::string path_id;
    SymmetryType type;
};

struct SymmetryGenerator {
    PauliString string;
    std::vector<int> subset;
    std::string label;
    std::vector<SymmetryMembership> paths;
};

struct SymmetryGroup {
    std::vector<SymmetryGenerator> generators;
    /// Number of independent generators over GF(2); the group is (Z2)^rank.
    std::size_t rank() const;
};

struct SurvivalReport {
    SymmetryGroup surviving;
    bool is_protected = false;
    /// Paths whose x-type and z-type strings both survive.
    std::vector<std::string> protected_paths;
};

/// Generator P of the unitary e^{-i theta P} behind an error. Identity for zero
/// strength; nullopt for depolarizing noise with p > 0, which breaks every symmetry.
std::optional<PauliString> error_string(const GraphSpec& g, const ErrorSpec& e);

SurvivalReport surviving_subgroup(const SymmetryGroup& group, const PauliString& error);
SurvivalReport surviving_subgroup(const GraphSpec& g, const SymmetryGroup& group, const ErrorSpec& e);

struct SymmetryFactorization {
    PauliString input_part;
    PauliString middle_part;
    PauliString output_part;
    /// input*middle*output*i^log_i reproduces the original string.
    int log_i = 0;
};

SymmetryFactorization factorize(const PauliString& s, const GraphSpec& g);

/// GF(2) rank of the letter parts of `strings`.
std::size_t gf2_rank(std::span<const PauliString> strings);

}  // namespace sptel
