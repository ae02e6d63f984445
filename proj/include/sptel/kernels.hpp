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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>

namespace sptel {

using cplx = std::complex<double>;

/// Dense amplitude kernels. Every entry has a scalar reference implementation;
/// the AVX2 table must agree with it to rounding (see tests/kernels_test.cpp).
/// `bit` is a basis-index bit, `n` the number of amplitudes (a power of two).
struct KernelTable {
    const char* name;
    /// 2x2 matrix m (row-major) on the pairs differing in `bit`.
    void (*apply_1q)(cplx* a, std::size_t n, unsigned bit, const cplx* m);
    /// a[i] *= parity(i & mask) ? odd : even.
    void (*apply_parity_phase)(cplx* a, std::size_t n, std::uint64_t mask, cplx even, cplx odd);
    /// out[i ^ xmask] += coeff * (-1)^popcount(i & zmask) * in[i].
    void (*pauli_accumulate)(cplx* out, const cplx* in, std::size_t n, std::uint64_t xmask, std::uint64_t zmask,
                             cplx coeff);
    /// sum_i conj(a[i ^ xmask]) * (-1)^popcount(i & zmask) * a[i].
    cplx (*pauli_inner)(const cplx* a, std::size_t n, std::uint64_t xmask, std::uint64_t zmask);
    /// Total weight of the amplitudes with `bit` set.
    double (*prob_one)(const cplx* a, std::size_t n, unsigned bit);
    /// Zero the amplitudes whose `bit` differs from `value`, scale the rest.
    void (*project)(cplx* a, std::size_t n, unsigned bit, unsigned value, double scale);
    /// sum_i conj(a[i]) * b[i].
    cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
    /// y += alpha * x.
    void (*axpy)(cplx* y, const cplx* x, std::size_t n, cplx alpha);
};

const KernelTable& scalar_kernels();
/// nullptr when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels();

/// Table used by the simulator. Chosen once from SPTEL_KERNELS=scalar|avx2|auto
/// (default auto), overridable with set_kernel_backend.
const KernelTable& kernels();
/// Accepts "scalar", "avx2" or "auto"; throws std::invalid_argument otherwise
/// or when avx2 is requested but unavailable.
void set_kernel_backend(const std::string& which);

}  // namespace sptel
