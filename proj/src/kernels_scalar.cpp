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

#include <bit>

#include "sptel/kernels.hpp"

namespace sptel {

namespace {

inline double zsign(std::size_t i, std::uint64_t zmask) {
    return (std::popcount(static_cast<std::uint64_t>(i) & zmask) & 1) ? -1.0 : 1.0;
}

void apply_1q(cplx* a, std::size_t n, unsigned bit, const cplx* m) {
    const std::size_t stride = std::size_t{1} << bit;
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t j = base; j < base + stride; ++j) {
            const cplx a0 = a[j];
            const cplx a1 = a[j + stride];
            a[j] = m[0] * a0 + m[1] * a1;
            a[j + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void apply_parity_phase(cplx* a, std::size_t n, std::uint64_t mask, cplx even, cplx odd) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= (std::popcount(i & mask) & 1) ? odd : even;
}

void pauli_accumulate(cplx* out, const cplx* in, std::size_t n, std::uint64_t xmask, std::uint64_t zmask, cplx coeff) {
    for (std::size_t i = 0; i < n; ++i) out[i ^ xmask] += coeff * zsign(i, zmask) * in[i];
}

cplx pauli_inner(const cplx* a, std::size_t n, std::uint64_t xmask, std::uint64_t zmask) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i ^ xmask]) * zsign(i, zmask) * a[i];
    return acc;
}

double prob_one(const cplx* a, std::size_t n, unsigned bit) {
    double p = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if ((i >> bit) & 1u) p += std::norm(a[i]);
    return p;
}

void project(cplx* a, std::size_t n, unsigned bit, unsigned value, double scale) {
    for (std::size_t i = 0; i < n; ++i) a[i] = (((i >> bit) & 1u) == value) ? a[i] * scale : cplx{};
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

void axpy(cplx* y, const cplx* x, std::size_t n, cplx alpha) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

constexpr KernelTable kScalar{"scalar", apply_1q, apply_parity_phase, pauli_accumulate, pauli_inner,
                              prob_one, project,   dot,                 axpy};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace sptel
