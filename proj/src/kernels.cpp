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

#include "scamdet/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace scamdet::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

double gather_dot(const std::uint32_t* indices, const double* values,
                  std::size_t nnz, const double* dense) {
    double sum = 0.0;
    for (std::size_t i = 0; i < nnz; ++i) {
        sum += values[i] * dense[indices[i]];
    }
    return sum;
}

void scale(double* v, std::size_t n, double factor) {
    for (std::size_t i = 0; i < n; ++i) {
        v[i] *= factor;
    }
}

}  // namespace scalar

#if !defined(SCAMDET_HAVE_AVX2_TU)

// Non-x86 builds: the AVX2 translation unit is absent, so the entry points
// collapse to the scalar reference. The dispatcher never selects them.
namespace avx2 {
bool compiled() { return false; }
bool usable() { return false; }
double dot(const double* a, const double* b, std::size_t n) {
    return scalar::dot(a, b, n);
}
double gather_dot(const std::uint32_t* indices, const double* values,
                  std::size_t nnz, const double* dense) {
    return scalar::gather_dot(indices, values, nnz, dense);
}
void scale(double* v, std::size_t n, double factor) {
    scalar::scale(v, n, factor);
}
}  // namespace avx2

#endif  // !SCAMDET_HAVE_AVX2_TU

namespace {

struct Ops {
    double (*dot)(const double*, const double*, std::size_t);
    double (*gather_dot)(const std::uint32_t*, const double*, std::size_t,
                         const double*);
    void (*scale)(double*, std::size_t, double);
};

constexpr Ops kScalarOps{&scalar::dot, &scalar::gather_dot, &scalar::scale};
constexpr Ops kAvx2Ops{&avx2::dot, &avx2::gather_dot, &avx2::scale};

std::atomic<Backend> g_backend{Backend::scalar};
std::atomic<const Ops*> g_ops{nullptr};

void install(Backend backend) {
    g_backend.store(backend, std::memory_order_relaxed);
    g_ops.store(backend == Backend::avx2 ? &kAvx2Ops : &kScalarOps,
                std::memory_order_release);
}

Backend pick_default() {
    if (const char* env = std::getenv("SCAMDET_SIMD")) {
        const std::string_view v(env);
        if (v == "scalar") {
            return Backend::scalar;
        }
        if (v == "avx2" && avx2::usable()) {
            return Backend::avx2;
        }
        // Unknown or unusable request falls through to auto-detection.
    }
    return avx2::usable() ? Backend::avx2 : Backend::scalar;
}

const Ops* ops() {
    const Ops* current = g_ops.load(std::memory_order_acquire);
    if (current == nullptr) {
        install(pick_default());
        current = g_ops.load(std::memory_order_acquire);
    }
    return current;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
    return ops()->dot(a, b, n);
}

double gather_dot(const std::uint32_t* indices, const double* values,
                  std::size_t nnz, const double* dense) {
    return ops()->gather_dot(indices, values, nnz, dense);
}

void scale(double* v, std::size_t n, double factor) {
    ops()->scale(v, n, factor);
}

Backend active_backend() {
    ops();
    return g_backend.load(std::memory_order_relaxed);
}

bool backend_supported(Backend backend) {
    switch (backend) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
            return avx2::usable();
    }
    return false;
}

bool set_backend(Backend backend) {
    if (!backend_supported(backend)) {
        return false;
    }
    install(backend);
    return true;
}

std::string_view backend_name(Backend backend) {
    switch (backend) {
        case Backend::scalar:
            return "scalar";
        case Backend::avx2:
            return "avx2";
    }
    return "unknown";
}

}  // namespace scamdet::kernels
