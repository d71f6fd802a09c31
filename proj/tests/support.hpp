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

// Shared test fixtures: temp directories, tiny corpora, and the synthetic
// marker-based corpus generator used by the pipeline and acceptance tests.

#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "scamdet/corpus.hpp"
#include "scamdet/rng.hpp"

namespace scamdet::testing {

/// Unique temp directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& prefix = "scamdet-test") {
        static std::atomic<unsigned> counter{0};
        const auto stamp =
            std::chrono::steady_clock::now().time_since_epoch().count();
        path_ = std::filesystem::temp_directory_path() /
                (prefix + "-" + std::to_string(stamp) + "-" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const {
        return path_ / name;
    }

private:
    std::filesystem::path path_;
};

inline Message make_message(std::string id, std::string text, int label,
                            Category category = Category::other,
                            Variant variant = Variant::original) {
    Message m;
    m.id = std::move(id);
    m.text = std::move(text);
    m.label = label;
    m.category = category;
    m.variant = variant;
    return m;
}

/// Knobs for the synthetic marker corpus.
struct SyntheticSpec {
    std::size_t n_messages = 800;
    std::uint64_t seed = 13;
    // Each message gets `marker_slots` class-marker tokens; each slot is
    // independently drawn from the wrong class's pool with probability
    // `marker_noise` (label-correlated noise).
    int marker_slots = 6;
    double marker_noise = 0.15;
    int filler_tokens = 12;
    double scam_fraction = 0.5;
};

/// Marker-based synthetic corpus: scam texts lean on a scam-marker pool,
/// non-scam texts on a benign pool, with per-slot label noise and shared
/// filler vocabulary. Separable but not trivially so.
Corpus make_synthetic_corpus(const SyntheticSpec& spec);

/// Messages crafted so the four trained models disagree at a controllable
/// rate: `ambiguous_fraction` of messages mix markers from both pools.
Corpus make_disagreement_corpus(const SyntheticSpec& spec,
                                double ambiguous_fraction,
                                std::size_t n_messages);

}  // namespace scamdet::testing
