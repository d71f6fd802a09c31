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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "scamdet/kernels.hpp"
#include "scamdet/rng.hpp"

using namespace scamdet;

namespace {

std::vector<double> random_dense(std::size_t n, Rng& rng) {
    std::vector<double> v(n);
    for (double& x : v) {
        x = rng.next_double() * 2.0 - 1.0;
    }
    return v;
}

}  // namespace

TEST_CASE("scalar dot matches a plain loop on small exact inputs") {
    const std::vector<double> a = {1.0, 2.0, 3.0};
    const std::vector<double> b = {4.0, -5.0, 6.0};
    CHECK(kernels::scalar::dot(a.data(), b.data(), 3) ==
          doctest::Approx(12.0));
    CHECK(kernels::scalar::dot(a.data(), b.data(), 0) == 0.0);
}

TEST_CASE("scalar gather_dot reads through the index list") {
    const std::vector<std::uint32_t> idx = {1, 4, 7};
    const std::vector<double> vals = {2.0, 3.0, 4.0};
    const std::vector<double> dense = {0, 1, 0, 0, 10, 0, 0, 100};
    CHECK(kernels::scalar::gather_dot(idx.data(), vals.data(), 3,
                                      dense.data()) ==
          doctest::Approx(2.0 + 30.0 + 400.0));
}

TEST_CASE("avx2 variants agree with the scalar reference") {
    if (!kernels::avx2::usable()) {
        MESSAGE("AVX2 not usable on this host; variant equivalence skipped");
        return;
    }
    Rng rng(2024);
    for (const std::size_t n : {0UL, 1UL, 3UL, 4UL, 5UL, 63UL, 1000UL, 4097UL}) {
        const auto a = random_dense(n, rng);
        const auto b = random_dense(n, rng);
        const double expected = kernels::scalar::dot(a.data(), b.data(), n);
        const double actual = kernels::avx2::dot(a.data(), b.data(), n);
        CHECK(std::abs(actual - expected) <=
              1e-10 * std::max(1.0, std::abs(expected)));
    }

    // sparse-against-dense gather
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 64 + rng.next_below(2000);
        const std::size_t nnz = rng.next_below(dim);
        std::vector<std::uint32_t> idx(nnz);
        for (auto& i : idx) {
            i = static_cast<std::uint32_t>(rng.next_below(dim));
        }
        const auto vals = random_dense(nnz, rng);
        const auto dense = random_dense(dim, rng);
        const double expected = kernels::scalar::gather_dot(
            idx.data(), vals.data(), nnz, dense.data());
        const double actual =
            kernels::avx2::gather_dot(idx.data(), vals.data(), nnz,
                                      dense.data());
        CHECK(std::abs(actual - expected) <=
              1e-10 * std::max(1.0, std::abs(expected)));
    }

    auto v1 = random_dense(1003, rng);
    auto v2 = v1;
    kernels::scalar::scale(v1.data(), v1.size(), 0.25);
    kernels::avx2::scale(v2.data(), v2.size(), 0.25);
    CHECK(v1 == v2);  // same multiply per lane, bit-exact
}

TEST_CASE("backend selection respects CPU support") {
    const kernels::Backend original = kernels::active_backend();

    CHECK(kernels::backend_supported(kernels::Backend::scalar));
    CHECK(kernels::set_backend(kernels::Backend::scalar));
    CHECK(kernels::active_backend() == kernels::Backend::scalar);

    const std::vector<double> a = {1.0, 2.0};
    CHECK(kernels::dot(a.data(), a.data(), 2) == doctest::Approx(5.0));

    if (kernels::avx2::usable()) {
        CHECK(kernels::set_backend(kernels::Backend::avx2));
        CHECK(kernels::active_backend() == kernels::Backend::avx2);
        CHECK(kernels::dot(a.data(), a.data(), 2) == doctest::Approx(5.0));
    } else {
        CHECK_FALSE(kernels::set_backend(kernels::Backend::avx2));
    }

    kernels::set_backend(original);
    CHECK(kernels::backend_name(kernels::Backend::scalar) == "scalar");
    CHECK(kernels::backend_name(kernels::Backend::avx2) == "avx2");
}
