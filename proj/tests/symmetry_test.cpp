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
#include <gtest/gtest.h>

#include "oracle.hpp"
#include "sptel/errors.hpp"
#include "sptel/paths.hpp"
#include "sptel/symmetry.hpp"

using namespace sptel;

namespace {

oracle::Mat dense(const PauliString& p) {
    std::string s;
    for (std::size_t q = 0; q < p.num_qubits(); ++q) s += letter_char(p.letter(q));
    return p.phase() * oracle::pauli_string(s);
}

bool stabilizes(const PauliString& p, const oracle::Vec& psi) { return (dense(p) * psi - psi).norm() < 1e-10; }

std::vector<GraphSpec> small_graphs() {
    return {build_chain(5), build_chain(6), build_diamond(), build_hourglass(1), build_hourglass(2), build_hourglass(3)};
}

}  // namespace

TEST(Symmetry, StabilizersFixTheGraphState) {
    for (const auto& g : small_graphs()) {
        const oracle::Vec psi = oracle::prepare_pure(g, {});
        for (const auto& k : stabilizers(g).generators) EXPECT_TRUE(stabilizes(k, psi)) << g.name() << " " << k.str();
    }
}

TEST(Symmetry, StabilizerLetters) {
    const GraphSpec d = build_diamond();
    EXPECT_EQ(stabilizer_for_vertex(d, 1).str(), "+XZIIII");
    EXPECT_EQ(stabilizer_for_vertex(d, 2).str(), "+ZYZZII");
    EXPECT_EQ(stabilizer_for_vertex(d, 6).str(), "+IIIIZX");
}

TEST(Symmetry, PathStringsStabilize) {
    for (const auto& g : small_graphs()) {
        const oracle::Vec psi = oracle::prepare_pure(g, {});
        for (const auto& ps : enumerate_paths(g)) {
            EXPECT_TRUE(ps.measurable) << g.name() << " " << ps.path_id;
            EXPECT_TRUE(stabilizes(ps.x_string, psi)) << ps.x_string.str();
            EXPECT_TRUE(stabilizes(ps.z_string, psi)) << ps.z_string.str();
        }
    }
}

TEST(Symmetry, DiamondPathStrings) {
    const GraphSpec d = build_diamond();
    const PathSymmetry p1 = path_symmetry(d, d.path("p1"));
    EXPECT_EQ(p1.x_subset, (std::vector<int>{1, 3, 5}));
    EXPECT_EQ(p1.z_subset, (std::vector<int>{2, 4, 6}));
    const PathSymmetry p2 = path_symmetry(d, d.path("p2"));
    EXPECT_EQ(p2.x_subset, (std::vector<int>{1, 4, 5}));
    EXPECT_EQ(p2.z_subset, (std::vector<int>{2, 3, 6}));
}

TEST(Symmetry, DiamondCrosstalkSurvival) {
    const GraphSpec d = build_diamond();
    const SymmetryGroup group = path_symmetry_group(d);
    auto protected_by = [&](int a, int b) {
        return surviving_subgroup(d, group, ZZCrosstalk{a, b, 0.3}).protected_paths;
    };
    EXPECT_EQ(protected_by(3, 5), (std::vector<std::string>{"p1"}));
    EXPECT_EQ(protected_by(2, 4), (std::vector<std::string>{"p1"}));
    EXPECT_EQ(protected_by(2, 3), (std::vector<std::string>{"p2"}));
    EXPECT_TRUE(protected_by(1, 2).empty());
    const auto none = surviving_subgroup(d, group, ZZCrosstalk{3, 5, 0.0});
    EXPECT_EQ(none.protected_paths.size(), 2u);
    EXPECT_FALSE(surviving_subgroup(d, group, Depolarizing2q{0.1}).is_protected);
}

TEST(Symmetry, HourglassPathCountAndHalving) {
    for (int n = 1; n <= 6; ++n) {
        const GraphSpec g = build_hourglass(n);
        const auto paths = enumerate_paths(g);
        ASSERT_EQ(paths.size(), std::size_t{1} << n);
        const SymmetryGroup group = path_symmetry_group(g);
        for (int i = 1; i <= n; ++i)
            for (int k = 0; k < 2; ++k)
                for (Letter ax : {Letter::X, Letter::Z}) {
                    const auto rep =
                        surviving_subgroup(g, group, SingleQubitError{hourglass_vertex(n, 2, i, k), ax, 0.7});
                    EXPECT_EQ(rep.protected_paths.size(), std::size_t{1} << (n - 1)) << "n=" << n;
                }
    }
}

TEST(Symmetry, ErrorStrings) {
    const GraphSpec d = build_diamond();
    EXPECT_EQ(error_string(d, ZZCrosstalk{3, 5, 0.2})->str(), "+IIZIZI");
    EXPECT_EQ(error_string(d, SingleQubitError{4, Letter::Y, 0.2})->str(), "+IIIYII");
    EXPECT_TRUE(error_string(d, SingleQubitError{4, Letter::Y, 0.0})->is_identity());
    EXPECT_FALSE(error_string(d, Depolarizing2q{0.1}).has_value());
    EXPECT_TRUE(error_string(d, Depolarizing2q{0.0})->is_identity());
}

TEST(Symmetry, FactorizationReassembles) {
    for (const auto& g : small_graphs())
        for (const auto& ps : enumerate_paths(g))
            for (const auto* s : {&ps.x_string, &ps.z_string}) {
                const SymmetryFactorization f = factorize(*s, g);
                PauliString r = f.input_part * f.middle_part * f.output_part;
                r.set_log_i(r.log_i() + f.log_i);
                EXPECT_EQ(r, *s);
                EXPECT_EQ(f.input_part.weight(), 1u);
                EXPECT_EQ(f.output_part.weight(), 1u);
            }
}

TEST(Symmetry, SubsetProductsAndRank) {
    const GraphSpec c = build_chain(6);
    const std::vector<int> odd{1, 3, 5};
    EXPECT_EQ(symmetry_from_subset(c, odd).unsigned_letters().str(), "+XIYIYZ");
    EXPECT_THROW(symmetry_from_subset(c, std::vector<int>{}), std::invalid_argument);
    EXPECT_THROW(symmetry_from_subset(c, std::vector<int>{9}), UnknownElementError);
    const auto st = stabilizers(build_hourglass(2)).generators;
    EXPECT_EQ(gf2_rank(st), st.size());
    std::vector<PauliString> dep{st[0], st[1], st[0] * st[1]};
    EXPECT_EQ(gf2_rank(dep), 2u);
    EXPECT_EQ(path_symmetry_group(build_hourglass(2)).rank(), 4u);
}
