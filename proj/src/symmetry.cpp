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

#include "sptel/symmetry.hpp"

#include <algorithm>
#include <stdexcept>

#include "sptel/errors.hpp"

namespace sptel {

PauliString stabilizer_for_vertex(const GraphSpec& g, int v) {
    const Vertex& vert = g.vertex(v);
    PauliString s(g.num_qubits());
    s.set_letter(g.position(v), vert.kind == StabilizerKind::X ? Letter::X : Letter::Y);
    for (int w : g.neighbors(v)) s.set_letter(g.position(w), Letter::Z);
    return s;
}

StabilizerSet stabilizers(const GraphSpec& g) {
    StabilizerSet set;
    set.graph_id = g.name();
    for (const auto& v : g.vertices()) set.generators.push_back(stabilizer_for_vertex(g, v.id));
    return set;
}

PauliString symmetry_from_subset(const GraphSpec& g, std::span<const int> subset) {
    if (subset.empty()) throw std::invalid_argument("symmetry subset must be nonempty");
    std::vector<int> ids(subset.begin(), subset.end());
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw std::invalid_argument("symmetry subset has repeated vertices");
    PauliString s(g.num_qubits());
    for (int v : ids) s *= stabilizer_for_vertex(g, v);
    return s;
}

std::size_t SymmetryGroup::rank() const {
    std::vector<PauliString> strings;
    for (const auto& gen : generators) strings.push_back(gen.string);
    return gf2_rank(strings);
}

std::size_t gf2_rank(std::span<const PauliString> strings) {
    // Row vectors of 2N bits packed into 64-bit words.
    std::vector<std::vector<std::uint64_t>> rows;
    for (const auto& s : strings) {
        const std::size_t n = s.num_qubits();
        std::vector<std::uint64_t> row((2 * n + 63) / 64, 0);
        for (std::size_t q = 0; q < n; ++q) {
            const auto l = static_cast<unsigned>(s.letter(q));
            if (l & 1u) row[(2 * q) / 64] |= std::uint64_t{1} << ((2 * q) % 64);
            if (l & 2u) row[(2 * q + 1) / 64] |= std::uint64_t{1} << ((2 * q + 1) % 64);
        }
        rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    if (rows.empty()) return 0;
    const std::size_t bits = rows[0].size() * 64;
    for (std::size_t bit = 0; bit < bits && rank < rows.size(); ++bit) {
        const std::size_t wd = bit / 64;
        const std::uint64_t m = std::uint64_t{1} << (bit % 64);
        std::size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot][wd] & m)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && (rows[r][wd] & m))
                for (std::size_t w = 0; w < rows[r].size(); ++w) rows[r][w] ^= rows[rank][w];
        ++rank;
    }
    return rank;
}

std::optional<PauliString> error_string(const GraphSpec& g, const ErrorSpec& e) {
    PauliString s(g.num_qubits());
    if (const auto* zz = std::get_if<ZZCrosstalk>(&e)) {
        if (zz->a == zz->b) throw std::invalid_argument("crosstalk needs two distinct vertices");
        if (zz->epsilon != 0.0) {
            s.set_letter(g.position(zz->a), Letter::Z);
            s.set_letter(g.position(zz->b), Letter::Z);
        }
        return s;
    }
    if (const auto* sq = std::get_if<SingleQubitError>(&e)) {
        if (sq->theta != 0.0) s.set_letter(g.position(sq->vertex), sq->axis);
        return s;
    }
    if (std::get<Depolarizing2q>(e).p == 0.0) return s;
    return std::nullopt;
}

SurvivalReport surviving_subgroup(const SymmetryGroup& group, const PauliString& error) {
    SurvivalReport report;
    for (const auto& gen : group.generators)
        if (commutes(gen.string, error)) report.surviving.generators.push_back(gen);

    std::vector<std::string> with_x;
    std::vector<std::string> with_z;
    for (const auto& gen : report.surviving.generators)
        for (const auto& m : gen.paths) (m.type == SymmetryType::XType ? with_x : with_z).push_back(m.path_id);
    std::sort(with_x.begin(), with_x.end());
    std::sort(with_z.begin(), with_z.end());
    std::set_intersection(with_x.begin(), with_x.end(), with_z.begin(), with_z.end(),
                          std::back_inserter(report.protected_paths));
    report.protected_paths.erase(std::unique(report.protected_paths.begin(), report.protected_paths.end()),
                                 report.protected_paths.end());
    report.is_protected = !report.protected_paths.empty();
    return report;
}

SurvivalReport surviving_subgroup(const GraphSpec& g, const SymmetryGroup& group, const ErrorSpec& e) {
    const auto s = error_string(g, e);
    if (!s) return {};
    return surviving_subgroup(group, *s);
}

SymmetryFactorization factorize(const PauliString& s, const GraphSpec& g) {
    if (s.num_qubits() != g.num_qubits())
        throw DimensionError("string has " + std::to_string(s.num_qubits()) + " qubits, graph has " +
                             std::to_string(g.num_qubits()));
    const std::size_t in = g.position(g.input_id());
    const std::size_t out = g.position(g.output_id());
    std::vector<std::size_t> middle;
    for (std::size_t q = 0; q < g.num_qubits(); ++q)
        if (q != in && q != out) middle.push_back(q);
    const std::size_t in_span[] = {in};
    const std::size_t out_span[] = {out};
    SymmetryFactorization f{s.restricted(in_span), s.restricted(middle), s.restricted(out_span), s.log_i()};
    return f;
}

}  // namespace sptel
