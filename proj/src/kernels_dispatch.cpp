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

#include <cstdlib>
#include <stdexcept>

#include "sptel/kernels.hpp"

namespace sptel {

#ifdef SPTEL_HAVE_AVX2
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#ifdef SPTEL_HAVE_AVX2
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok ? &avx2_kernel_table() : nullptr;
#else
    return nullptr;
#endif
}

namespace {

const KernelTable* pick(const std::string& which) {
    if (which == "scalar") return &scalar_kernels();
    if (which == "avx2") {
        if (const auto* t = avx2_kernels()) return t;
        throw std::invalid_argument("avx2 kernels requested but not available on this build or CPU");
    }
    if (which == "auto" || which.empty()) {
        const auto* t = avx2_kernels();
        return t ? t : &scalar_kernels();
    }
    throw std::invalid_argument("unknown kernel backend '" + which + "' (expected scalar, avx2 or auto)");
}

const KernelTable*& active() {
    static const KernelTable* table = [] {
        const char* env = std::getenv("SPTEL_KERNELS");
        return pick(env ? env : "auto");
    }();
    return table;
}

}  // namespace

const KernelTable& kernels() { return *active(); }

void set_kernel_backend(const std::string& which) { active() = pick(which); }

}  // namespace sptel
