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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Vector arithmetic used by the feature and nearest-neighbor inner loops.
// Every operation has a scalar reference implementation and, on x86-64
// builds, an AVX2 variant. The active variant is chosen once at runtime
// (CPUID probe, overridable via the SCAMDET_SIMD environment variable or
// set_backend()), and the variants are equivalence-tested against each
// other in the test suite.

namespace scamdet::kernels {

enum class Backend {
    scalar,
    avx2,
};

/// Dense dot product of two arrays of equal length.
double dot(const double* a, const double* b, std::size_t n);

/// Dot product of a sparse vector (indices/values, nnz entries) against a
/// dense array. Indices must be in-bounds for the dense array.
double gather_dot(const std::uint32_t* indices, const double* values,
                  std::size_t nnz, const double* dense);

/// In-place multiply by a constant.
void scale(double* v, std::size_t n, double factor);

Backend active_backend();

/// Returns false (and leaves the active backend unchanged) when the
/// requested backend is not compiled in or not supported by this CPU.
bool set_backend(Backend backend);

bool backend_supported(Backend backend);

std::string_view backend_name(Backend backend);

// Direct entry points, used by the equivalence tests and the dispatcher.

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double gather_dot(const std::uint32_t* indices, const double* values,
                  std::size_t nnz, const double* dense);
void scale(double* v, std::size_t n, double factor);
}  // namespace scalar

namespace avx2 {
bool compiled();
bool usable();
double dot(const double* a, const double* b, std::size_t n);
double gather_dot(const std::uint32_t* indices, const double* values,
                  std::size_t nnz, const double* dense);
void scale(double* v, std::size_t n, double factor);
}  // namespace avx2

}  // namespace scamdet::kernels
