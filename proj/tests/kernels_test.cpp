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

#include <complex>
#include <random>
#include <vector>

#include "sptel/kernels.hpp"

using namespace sptel;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& gen) {
    std::normal_distribution<double> d;
    std::vector<cplx> v(n);
    for (auto& a : v) a = {d(gen), d(gen)};
    return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

class KernelEquivalence : public ::testing::TestWithParam<std::size_t> {
  protected:
    void SetUp() override {
        fast_ = avx2_kernels();
        if (!fast_) GTEST_SKIP() << "AVX2 kernels not available on this build or CPU";
    }
    const KernelTable& ref_ = scalar_kernels();
    const KernelTable* fast_ = nullptr;
    std::mt19937_64 gen_{99};
    static constexpr double kTol = 1e-12;
};

}  // namespace

TEST_P(KernelEquivalence, Apply1q) {
    const std::size_t n = GetParam();
    const auto m = random_vector(4, gen_);
    for (unsigned bit = 0; (std::size_t{1} << bit) < n; ++bit) {
        auto a = random_vector(n, gen_), b = a;
        ref_.apply_1q(a.data(), n, bit, m.data());
        fast_->apply_1q(b.data(), n, bit, m.data());
        EXPECT_LT(max_diff(a, b), kTol) << "bit " << bit;
    }
}

TEST_P(KernelEquivalence, ParityPhase) {
    const std::size_t n = GetParam();
    for (std::uint64_t mask : {std::uint64_t{1}, std::uint64_t{3}, std::uint64_t{n - 1}, std::uint64_t{n / 2 + 1}}) {
        auto a = random_vector(n, gen_), b = a;
        const cplx even = std::polar(1.0, 0.3), odd = std::polar(1.0, -1.1);
        ref_.apply_parity_phase(a.data(), n, mask & (n - 1), even, odd);
        fast_->apply_parity_phase(b.data(), n, mask & (n - 1), even, odd);
        EXPECT_LT(max_diff(a, b), kTol);
    }
}

TEST_P(KernelEquivalence, PauliAccumulateAndInner) {
    const std::size_t n = GetParam();
    std::uniform_int_distribution<std::uint64_t> masks(0, n - 1);
    for (int trial = 0; trial < 8; ++trial) {
        const std::uint64_t xm = masks(gen_), zm = masks(gen_);
        const auto in = random_vector(n, gen_);
        auto a = random_vector(n, gen_), b = a;
        ref_.pauli_accumulate(a.data(), in.data(), n, xm, zm, {0.4, -0.7});
        fast_->pauli_accumulate(b.data(), in.data(), n, xm, zm, {0.4, -0.7});
        EXPECT_LT(max_diff(a, b), kTol);
        EXPECT_LT(std::abs(ref_.pauli_inner(in.data(), n, xm, zm) - fast_->pauli_inner(in.data(), n, xm, zm)),
                  1e-10);
    }
}

TEST_P(KernelEquivalence, ProbProjectDotAxpy) {
    const std::size_t n = GetParam();
    const auto x = random_vector(n, gen_);
    for (unsigned bit = 0; (std::size_t{1} << bit) < n; ++bit) {
        EXPECT_NEAR(ref_.prob_one(x.data(), n, bit), fast_->prob_one(x.data(), n, bit), 1e-10);
        for (unsigned value : {0u, 1u}) {
            auto a = x, b = x;
            ref_.project(a.data(), n, bit, value, 1.7);
            fast_->project(b.data(), n, bit, value, 1.7);
            EXPECT_LT(max_diff(a, b), kTol);
        }
    }
    const auto y = random_vector(n, gen_);
    EXPECT_LT(std::abs(ref_.dot(x.data(), y.data(), n) - fast_->dot(x.data(), y.data(), n)), 1e-10);
    auto a = y, b = y;
    ref_.axpy(a.data(), x.data(), n, {-0.2, 0.9});
    fast_->axpy(b.data(), x.data(), n, {-0.2, 0.9});
    EXPECT_LT(max_diff(a, b), kTol);
}

INSTANTIATE_TEST_SUITE_P(Sizes, KernelEquivalence, ::testing::Values(2, 4, 8, 64, 1024));

TEST(Kernels, ScalarMatchesDefinitions) {
    const KernelTable& k = scalar_kernels();
    std::vector<cplx> a{1, 2, 3, 4};
    // X on bit 1 swaps index pairs (0,2) and (1,3).
    const cplx xm[4] = {0, 1, 1, 0};
    k.apply_1q(a.data(), 4, 1, xm);
    EXPECT_EQ(a, (std::vector<cplx>{3, 4, 1, 2}));
    EXPECT_DOUBLE_EQ(k.prob_one(a.data(), 4, 0), 16.0 + 4.0);
    std::vector<cplx> out(4, 0.0);
    k.pauli_accumulate(out.data(), a.data(), 4, 0b00, 0b01, 1.0);
    EXPECT_EQ(out, (std::vector<cplx>{3, -4, 1, -2}));
    EXPECT_EQ(k.dot(a.data(), a.data(), 4), cplx(30.0));
}

TEST(Kernels, BackendSelection) {
    EXPECT_THROW(set_kernel_backend("sse9"), std::invalid_argument);
    set_kernel_backend("scalar");
    EXPECT_STREQ(kernels().name, "scalar");
    set_kernel_backend("auto");
    if (avx2_kernels()) {
        EXPECT_STREQ(kernels().name, avx2_kernels()->name);
    }
}
