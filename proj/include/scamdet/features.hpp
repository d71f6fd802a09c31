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

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "scamdet/corpus.hpp"

namespace scamdet {

/// Lowercases and splits on runs of non-word characters. Word characters
/// are ASCII alphanumerics plus non-ASCII codepoints outside the common
/// Unicode punctuation and space blocks; case folding is ASCII-only (no
/// locale tables).
std::vector<std::string> tokenize(const std::string& text);

/// Fitted unigram+bigram vocabulary with document frequencies.
/// Terms are ordered by descending document frequency, ties broken
/// lexicographically; terms seen in fewer than 2 documents are dropped.
struct Vocabulary {
    std::vector<std::string> terms;
    std::vector<std::uint32_t> doc_freq;  // parallel to terms
    std::uint32_t n_docs = 0;
    std::uint32_t max_terms = 20000;

    std::size_t size() const { return terms.size(); }

    /// Smoothed inverse document frequency: ln((1+n)/(1+df)) + 1.
    double idf(std::size_t term_index) const;

    /// Stable content hash used to pair models with the vocabulary they
    /// were trained on.
    std::uint64_t fingerprint() const;

    /// Term -> position lookup; call after mutating terms (fit and
    /// deserialization do this automatically).
    void rebuild_index();
    const std::unordered_map<std::string, std::uint32_t>& index() const {
        return index_;
    }

private:
    std::unordered_map<std::string, std::uint32_t> index_;
};

/// Sparse L2-normalized TF-IDF vector. Indices are strictly increasing,
/// values positive; the norm is 1 when any vocabulary term matched and 0
/// otherwise.
struct FeatureVector {
    std::vector<std::uint32_t> indices;
    std::vector<double> values;
    std::uint32_t dim = 0;

    std::size_t nnz() const { return indices.size(); }

    /// Value at a term index (0 when absent); binary search over indices.
    double at(std::uint32_t index) const;
};

inline constexpr std::uint32_t kDefaultMaxTerms = 20000;
inline constexpr std::uint32_t kMinDocFreq = 2;

Vocabulary fit_vocabulary(const Corpus& corpus,
                          std::uint32_t max_terms = kDefaultMaxTerms);

FeatureVector vectorize(const Vocabulary& vocab, const std::string& text);

}  // namespace scamdet
