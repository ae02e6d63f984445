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

#include <random>

#include "oracle.hpp"
#include "sptel/errors.hpp"
#include "sptel/pauli.hpp"

using namespace sptel;

namespace {

oracle::Mat dense(const PauliString& p) {
    std::string s;
    for (std::size_t q = 0; q < p.num_qubits(); ++q) s += letter_char(p.letter(q));
    return p.phase() * oracle::pauli_string(s);
}

PauliString random_string(std::mt19937& rng, std::size_t n) {
    PauliString p(n);
    for (std::size_t q = 0; q < n; ++q) p.set_letter(q, static_cast<Letter>(rng() % 4));
    p.set_log_i(static_cast<int>(rng() % 4));
    return p;
}

}  // namespace

TEST(Pauli, ParseAndPrintRoundTrip) {
    for (const char* s : {"+XIZY", "-IIZ", "+iXY", "-iZZZ", "+I"}) EXPECT_EQ(PauliString::from_str(s).str(), s);
    EXPECT_EQ(PauliString::from_str("X_Z").str(), "+XIZ");
    EXPECT_EQ(PauliString::from_str("-X").sign(), -1);
    EXPECT_THROW(PauliString::from_str("+XQ"), std::invalid_argument);
    EXPECT_THROW(PauliString::from_str("+iX").sign(), std::domain_error);
}

TEST(Pauli, SingleSiteProducts) {
    EXPECT_EQ(multiply(PauliString::from_str("X"), PauliString::from_str("Y")).str(), "+iZ");
    EXPECT_EQ(multiply(PauliString::from_str("Y"), PauliString::from_str("X")).str(), "-iZ");
    EXPECT_EQ(multiply(PauliString::from_str("Z"), PauliString::from_str("Z")).str(), "+I");
    EXPECT_THROW(multiply(PauliString::from_str("XX"), PauliString::from_str("X")), DimensionError);
}

TEST(Pauli, ProductMatchesDenseMatrices) {
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 4;
        const PauliString a = random_string(rng, n), b = random_string(rng, n);
        EXPECT_TRUE(dense(multiply(a, b)).isApprox(dense(a) * dense(b), 1e-12)) << a.str() << " * " << b.str();
    }
}

TEST(Pauli, CommutationMatchesMatrices) {
    std::mt19937 rng(12);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 4;
        const PauliString a = random_string(rng, n), b = random_string(rng, n);
        const oracle::Mat c = dense(a) * dense(b) - dense(b) * dense(a);
        EXPECT_EQ(commutes(a, b), c.norm() < 1e-12) << a.str() << " " << b.str();
    }
}

TEST(Pauli, GroupProperties) {
    std::mt19937 rng(13);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng() % 6;
        const PauliString a = random_string(rng, n), b = random_string(rng, n), c = random_string(rng, n);
        EXPECT_EQ((a * b) * c, a * (b * c));
        const PauliString sq = a.unsigned_letters() * a.unsigned_letters();
        EXPECT_TRUE(sq.is_identity());
        EXPECT_EQ(sq.log_i(), 0);
        EXPECT_EQ(a * PauliString(n), a);
    }
}

TEST(Pauli, MasksFollowBitOrder) {
    const PauliString p = PauliString::from_str("XIYZ");
    EXPECT_EQ(p.x_mask(), 0b1010u);
    EXPECT_EQ(p.z_mask(), 0b0011u);
    EXPECT_EQ(p.y_count(), 1u);
    EXPECT_EQ(p.weight(), 3u);
    EXPECT_EQ(p.support(), (std::vector<std::size_t>{0, 2, 3}));
    const std::vector<std::size_t> keep{2, 3};
    EXPECT_EQ(p.restricted(keep).str(), "+IIYZ");
}
