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

#include <cmath>

#include "oracle.hpp"
#include "sptel/diagnostics.hpp"
#include "sptel/ground_state.hpp"
#include "sptel/paths.hpp"
#include "sptel/symmetry.hpp"

using namespace sptel;

namespace {

StateVector prep(const GraphSpec& g, const std::vector<ErrorSpec>& e = {}) {
    return prepare_state(compile_preparation(g, e));
}

std::vector<double> dense_spectrum(const GraphSpec& g, const std::vector<ErrorSpec>& e, const std::vector<int>& cut) {
    std::vector<int> keep;
    for (int v : cut) keep.push_back(static_cast<int>(g.position(v)));
    const oracle::Vec psi = oracle::prepare_pure(g, e);
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::reduce(psi * psi.adjoint(), static_cast<int>(g.num_qubits()), keep));
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

}  // namespace

TEST(Spectrum, MatchesDenseModel) {
    const std::vector<int> cut{4, 5, 6};
    for (const auto& [g, e] : std::vector<std::pair<GraphSpec, std::vector<ErrorSpec>>>{
             {build_chain(6), {}},
             {build_diamond(), {}},
             {build_diamond(), {parse_error_spec("zz:3,5,0.3")}},
             {build_diamond(), {parse_error_spec("zz:1,2,0.2"), parse_error_spec("x1q:4,Y,0.3")}}}) {
        const auto spec = entanglement_spectrum(g, prep(g, e), cut);
        const auto ref = dense_spectrum(g, e, cut);
        ASSERT_EQ(spec.eigenvalues.size(), 8u);
        for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(spec.eigenvalues[i], ref[i], 1e-10) << g.name();
        double total = 0.0;
        for (double x : spec.eigenvalues) total += x;
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(Spectrum, DegeneracyClasses) {
    const GraphSpec d = build_diamond();
    const std::vector<int> cut{4, 5, 6};
    const auto clean = entanglement_spectrum(d, prep(d), cut);
    ASSERT_EQ(clean.nonzero().size(), 4u);
    EXPECT_EQ(clean.degeneracy_classes.size(), 1u);
    for (double x : clean.nonzero()) EXPECT_NEAR(x, 0.25, 1e-12);

    // Crosstalk on a link off one path leaves that path's symmetry intact: classes stay even.
    const auto noisy = entanglement_spectrum(d, prep(d, {parse_error_spec("zz:3,5,0.3")}), cut);
    EXPECT_GE(noisy.degeneracy_classes.size(), 2u);
    for (const auto& cls : noisy.degeneracy_classes) EXPECT_EQ(cls.size() % 2, 0u);
}

TEST(ReducedSymmetry, PathStringsForceDegeneracy) {
    const GraphSpec d = build_diamond();
    const std::vector<std::size_t> a{3, 4, 5};
    for (const auto& errs : std::vector<std::vector<ErrorSpec>>{{}, {parse_error_spec("zz:3,5,0.3")}}) {
        const StateVector psi = prep(d, errs);
        for (const auto& ps : enumerate_paths(d)) {
            const std::vector<PauliString> strings{ps.x_string, ps.z_string};
            const auto rep = reduced_symmetry_check(psi, a, strings);
            const bool protected_path = errs.empty() || ps.path_id == "p1";
            if (!protected_path) continue;
            for (const auto& s : rep.symmetries) EXPECT_LT(s.commutator_norm, 1e-8) << ps.path_id;
            if (rep.forces_degeneracy()) {
                const auto spec = entanglement_spectrum(psi, a);
                for (const auto& cls : spec.degeneracy_classes) EXPECT_EQ(cls.size() % 2, 0u);
            }
        }
    }
}

TEST(ReducedSymmetry, BrokenStringDoesNotCommute) {
    const GraphSpec d = build_diamond();
    const StateVector psi = prep(d, {parse_error_spec("zz:3,5,0.4")});
    const PathSymmetry p2 = path_symmetry(d, d.path("p2"));
    const std::vector<PauliString> strings{p2.x_string, p2.z_string};
    const auto rep = reduced_symmetry_check(psi, std::vector<std::size_t>{3, 4, 5}, strings);
    double worst = 0.0;
    for (const auto& s : rep.symmetries) worst = std::max(worst, s.commutator_norm);
    EXPECT_GT(worst, 1e-3);
    EXPECT_THROW(reduced_symmetry_check(psi, std::vector<std::size_t>{}, strings), std::invalid_argument);
}

TEST(Sop, OperatorConstruction) {
    for (int n : {2, 4, 6, 8}) {
        const int L = 2 * n + 2;
        const GraphSpec g = build_hourglass(n);
        const auto stabs = resource_stabilizers(g);
        EXPECT_EQ(stabs.size(), static_cast<std::size_t>(L));
        for (int row : {0, 1}) {
            const SopOperator op = sop_operator(n, 2, L, row);
            EXPECT_TRUE(is_stabilizer_product(op.used, stabs)) << op.used.str();
            EXPECT_EQ(op.repaired, op.used != op.printed);
            if (op.repaired) {
                EXPECT_FALSE(op.note.empty());
            }
            EXPECT_EQ(op.printed.letter(L - 1), Letter::X);
            EXPECT_EQ(op.used.letter(L - 1), Letter::X);
        }
    }
    EXPECT_THROW(sop_operator(2, 2, 8, 0), std::invalid_argument);
    EXPECT_THROW(sop_operator(2, 2, 6, 2), std::invalid_argument);
}

TEST(Sop, StabilizerProducts) {
    const GraphSpec g = build_hourglass(2);
    const auto stabs = resource_stabilizers(g);
    EXPECT_TRUE(is_stabilizer_product(stabs[0] * stabs[3], stabs));
    PauliString neg = stabs[1];
    neg.set_log_i(2);
    EXPECT_FALSE(is_stabilizer_product(neg, stabs));
    EXPECT_FALSE(is_stabilizer_product(PauliString::from_str("+ZIIIII"), stabs));
}

TEST(Sop, UnperturbedGroundStateHasUnitOrder) {
    for (int n : {2, 4}) {
        const StateVector psi = ground_state({HamiltonianFamily::HY, n, 2, 0.0}).psi;
        for (int row : {0, 1}) EXPECT_NEAR(string_order_parameter(psi, n, 2, 2 * n + 2, row), 1.0, 1e-8);
    }
}

TEST(Sop, ZFieldClosedForm) {
    // Each bulk Z field anticommutes only with its own stabilizer, so every bulk
    // stabilizer in the evaluated product contributes a factor cos(alpha).
    for (int n : {2, 4, 6}) {
        const int L = 2 * n + 2;
        const SopOperator op = sop_operator(n, 2, L, 0);
        int bulk_factors = 0;
        for (int col = op.l; col <= n - 1; col += 2) ++bulk_factors;
        if (!op.repaired) bulk_factors = -1;
        ASSERT_GE(bulk_factors, 0);
        for (double alpha : {0.3, 0.9, 1.4}) {
            const StateVector psi = ground_state({HamiltonianFamily::HZ, n, 2, alpha}).psi;
            EXPECT_NEAR(string_order_parameter(psi, op), std::pow(std::cos(alpha), bulk_factors), 1e-6)
                << "L=" << L << " alpha=" << alpha;
        }
    }
}

TEST(Sop, YFieldDecreasesWithAlpha) {
    const StateVector ref = ground_state({HamiltonianFamily::HY, 2, 2, 0.0}).psi;
    double prev = 1.0 + 1e-9;
    for (double alpha = 0.1; alpha < 1.55; alpha += 0.2) {
        const double s = string_order_parameter(ground_state({HamiltonianFamily::HY, 2, 2, alpha}).psi, 2, 2, 6, 0);
        EXPECT_LT(s, prev) << alpha;
        EXPECT_GE(s, -1e-9);
        prev = s;
    }
}
