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

#include "sptel/paths.hpp"

#include <algorithm>

namespace sptel {

namespace {

bool letter_matches_basis(Letter l, MeasureBasis b) {
    if (l == Letter::I) return true;
    switch (b) {
        case MeasureBasis::X: return l == Letter::X;
        case MeasureBasis::Y:
        case MeasureBasis::MinusY: return l == Letter::Y;
        case MeasureBasis::Z: return l == Letter::Z;
        case MeasureBasis::None: return false;
    }
    return false;
}

}  // namespace

PathSymmetry path_symmetry(const GraphSpec& g, const NamedPath& p) {
    PathSymmetry ps;
    ps.path_id = p.id;
    ps.label = p.label;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) (i % 2 == 0 ? ps.x_subset : ps.z_subset).push_back(p.vertices[i]);
    std::sort(ps.x_subset.begin(), ps.x_subset.end());
    std::sort(ps.z_subset.begin(), ps.z_subset.end());
    ps.x_string = symmetry_from_subset(g, ps.x_subset);
    ps.z_string = symmetry_from_subset(g, ps.z_subset);

    const std::size_t in = g.position(g.input_id());
    const std::size_t out = g.position(g.output_id());
    bool ok = ps.x_string.letter(in) == Letter::X && ps.z_string.letter(in) == Letter::Z;
    const Letter px = ps.x_string.letter(out);
    const Letter pz = ps.z_string.letter(out);
    ok = ok && px != Letter::I && pz != Letter::I && px != pz;
    for (std::size_t q = 0; q < g.num_qubits() && ok; ++q) {
        if (q == in || q == out) continue;
        const MeasureBasis b = g.vertices()[q].basis;
        ok = letter_matches_basis(ps.x_string.letter(q), b) && letter_matches_basis(ps.z_string.letter(q), b);
    }
    ps.measurable = ok;
    return ps;
}

std::vector<PathSymmetry> enumerate_paths(const GraphSpec& g) {
    std::vector<PathSymmetry> out;
    out.reserve(g.paths().size());
    for (const auto& p : g.paths()) out.push_back(path_symmetry(g, p));
    return out;
}

SymmetryGroup path_symmetry_group(const GraphSpec& g) {
    SymmetryGroup group;
    auto add = [&](const PauliString& s, const std::vector<int>& subset, const PathSymmetry& ps, SymmetryType t) {
        for (auto& gen : group.generators) {
            if (gen.string == s) {
                gen.paths.push_back({ps.path_id, t});
                return;
            }
        }
        SymmetryGenerator gen;
        gen.string = s;
        gen.subset = subset;
        gen.label = "(" + ps.label + "," + (t == SymmetryType::XType ? "x" : "z") + ")";
        gen.paths.push_back({ps.path_id, t});
        group.generators.push_back(std::move(gen));
    };
    for (const auto& ps : enumerate_paths(g)) {
        add(ps.x_string, ps.x_subset, ps, SymmetryType::XType);
        add(ps.z_string, ps.z_subset, ps, SymmetryType::ZType);
    }
    return group;
}

}  // namespace sptel
