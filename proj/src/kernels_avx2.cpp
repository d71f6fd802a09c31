// Copyright 2026-present the scamdet project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AVX2/FMA variants of the vector kernels (4 doubles per lane-group).
// This translation unit is only added to the build on x86-64 and is
// compiled with -mavx2 -mfma; callers must check usable() before
// dispatching here.

#include "scamdet/kernels.hpp"

#include <immintrin.h>

namespace scamdet::kernels::avx2 {

bool compiled() { return true; }

bool usable() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

double hsum256d(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    const __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i),
                               _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                               _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i),
                               _mm256_loadu_pd(b + i), acc0);
    }
    double sum = hsum256d(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

double gather_dot(const std::uint32_t* indices, const double* values,
                  std::size_t nnz, const double* dense) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= nnz; i += 4) {
        const __m128i idx = _mm_loadu_si128(
            reinterpret_cast<const __m128i*>(indices + i));
        const __m256d gathered = _mm256_i32gather_pd(dense, idx, 8);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(values + i), gathered, acc);
    }
    double sum = hsum256d(acc);
    for (; i < nnz; ++i) {
        sum += values[i] * dense[indices[i]];
    }
    return sum;
}

void scale(double* v, std::size_t n, double factor) {
    const __m256d f = _mm256_set1_pd(factor);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(v + i, _mm256_mul_pd(_mm256_loadu_pd(v + i), f));
    }
    for (; i < n; ++i) {
        v[i] *= factor;
    }
}

}  // namespace scamdet::kernels::avx2
