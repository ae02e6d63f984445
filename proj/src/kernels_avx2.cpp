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

#include <immintrin.h>

#include <bit>

#include "sptel/kernels.hpp"

// Two complex doubles per __m256d, laid out [re0, im0, re1, im1].

namespace sptel {

namespace {

inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d bre = _mm256_movedup_pd(b);
    const __m256d bim = _mm256_permute_pd(b, 0xF);
    const __m256d aswap = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, bre, _mm256_mul_pd(aswap, bim));
}

// conj(a) * b
inline __m256d cmul_conj(__m256d a, __m256d b) {
    const __m256d are = _mm256_movedup_pd(a);
    const __m256d aim = _mm256_permute_pd(a, 0xF);
    const __m256d bswap = _mm256_permute_pd(b, 0x5);
    // re = ar*br + ai*bi, im = ar*bi - ai*br
    return _mm256_fmsubadd_pd(are, b, _mm256_mul_pd(aim, bswap));
}

inline __m256d bcast(cplx c) { return _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag()); }

inline __m256d load(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline cplx hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

inline double par_sign(std::size_t i, std::uint64_t mask) {
    return (std::popcount(static_cast<std::uint64_t>(i) & mask) & 1) ? -1.0 : 1.0;
}

// Swap the two complex lanes when the pair is read through i ^ xmask with xmask odd.
inline __m256d load_xor(const cplx* a, std::size_t i, std::uint64_t xmask) {
    const __m256d v = load(a + ((i ^ xmask) & ~std::size_t{1}));
    return (xmask & 1u) ? _mm256_permute2f128_pd(v, v, 0x01) : v;
}

void apply_1q(cplx* a, std::size_t n, unsigned bit, const cplx* m) {
    if (bit == 0) {
        scalar_kernels().apply_1q(a, n, bit, m);
        return;
    }
    const std::size_t stride = std::size_t{1} << bit;
    const __m256d m0 = bcast(m[0]), m1 = bcast(m[1]), m2 = bcast(m[2]), m3 = bcast(m[3]);
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t j = base; j < base + stride; j += 2) {
            const __m256d a0 = load(a + j);
            const __m256d a1 = load(a + j + stride);
            store(a + j, _mm256_add_pd(cmul(m0, a0), cmul(m1, a1)));
            store(a + j + stride, _mm256_add_pd(cmul(m2, a0), cmul(m3, a1)));
        }
    }
}

void apply_parity_phase(cplx* a, std::size_t n, std::uint64_t mask, cplx even, cplx odd) {
    if (n < 2) {
        scalar_kernels().apply_parity_phase(a, n, mask, even, odd);
        return;
    }
    const double er = even.real(), ei = even.imag(), orr = odd.real(), oi = odd.imag();
    const bool low = mask & 1u;
    for (std::size_t i = 0; i < n; i += 2) {
        const bool p0 = std::popcount(i & mask) & 1;
        const bool p1 = p0 ^ low;
        const __m256d ph = _mm256_setr_pd(p0 ? orr : er, p0 ? oi : ei, p1 ? orr : er, p1 ? oi : ei);
        store(a + i, cmul(ph, load(a + i)));
    }
}

void pauli_accumulate(cplx* out, const cplx* in, std::size_t n, std::uint64_t xmask, std::uint64_t zmask, cplx coeff) {
    if (n < 2) {
        scalar_kernels().pauli_accumulate(out, in, n, xmask, zmask, coeff);
        return;
    }
    // Gather form: out[j] += coeff * sign(j ^ xmask) * in[j ^ xmask].
    const __m256d c = bcast(coeff);
    const bool zlow = zmask & 1u;
    for (std::size_t j = 0; j < n; j += 2) {
        const double s0 = par_sign(j ^ xmask, zmask);
        const double s1 = zlow ? -s0 : s0;
        const __m256d sv = _mm256_setr_pd(s0, s0, s1, s1);
        const __m256d src = _mm256_mul_pd(sv, load_xor(in, j, xmask));
        store(out + j, _mm256_add_pd(load(out + j), cmul(c, src)));
    }
}

cplx pauli_inner(const cplx* a, std::size_t n, std::uint64_t xmask, std::uint64_t zmask) {
    if (n < 2) return scalar_kernels().pauli_inner(a, n, xmask, zmask);
    __m256d acc = _mm256_setzero_pd();
    const bool zlow = zmask & 1u;
    for (std::size_t i = 0; i < n; i += 2) {
        const double s0 = par_sign(i, zmask);
        const double s1 = zlow ? -s0 : s0;
        const __m256d sv = _mm256_setr_pd(s0, s0, s1, s1);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(sv, cmul_conj(load_xor(a, i, xmask), load(a + i))));
    }
    return hsum(acc);
}

double prob_one(const cplx* a, std::size_t n, unsigned bit) {
    if (bit == 0) return scalar_kernels().prob_one(a, n, bit);
    const std::size_t stride = std::size_t{1} << bit;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t base = stride; base < n; base += 2 * stride)
        for (std::size_t j = base; j < base + stride; j += 2) {
            const __m256d v = load(a + j);
            acc = _mm256_fmadd_pd(v, v, acc);
        }
    const cplx s = hsum(acc);
    return s.real() + s.imag();
}

void project(cplx* a, std::size_t n, unsigned bit, unsigned value, double scale) {
    if (bit == 0) {
        scalar_kernels().project(a, n, bit, value, scale);
        return;
    }
    const std::size_t stride = std::size_t{1} << bit;
    const __m256d sc = _mm256_set1_pd(scale);
    const __m256d zero = _mm256_setzero_pd();
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        cplx* keep = a + base + (value ? stride : 0);
        cplx* drop = a + base + (value ? 0 : stride);
        for (std::size_t j = 0; j < stride; j += 2) {
            store(keep + j, _mm256_mul_pd(sc, load(keep + j)));
            store(drop + j, zero);
        }
    }
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = _mm256_add_pd(acc, cmul_conj(load(a + i), load(b + i)));
    cplx r = hsum(acc);
    for (; i < n; ++i) r += std::conj(a[i]) * b[i];
    return r;
}

void axpy(cplx* y, const cplx* x, std::size_t n, cplx alpha) {
    const __m256d al = bcast(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store(y + i, _mm256_add_pd(load(y + i), cmul(al, load(x + i))));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

constexpr KernelTable kAvx2{"avx2", apply_1q, apply_parity_phase, pauli_accumulate, pauli_inner,
                            prob_one, project,   dot,                 axpy};

}  // namespace

const KernelTable& avx2_kernel_table() { return kAvx2; }

}  // namespace sptel
