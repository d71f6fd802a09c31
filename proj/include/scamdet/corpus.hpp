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
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scamdet {

// Message labels: scam is the positive class everywhere in the system.
inline constexpr int kNotScam = 0;
inline constexpr int kScam = 1;

enum class Category {
    romance,
    recruitment,
    finance,
    pet,
    lottery,
    loan,
    other,
};

enum class Variant {
    original,
    adversarial,
    augmented,
};

std::string_view to_string(Category c);
std::string_view to_string(Variant v);
Category category_from_string(std::string_view s);
Variant variant_from_string(std::string_view s);

/// All scam categories in report order; `other` holds non-scam and
/// uncategorized messages.
inline constexpr Category kAllCategories[] = {
    Category::romance, Category::recruitment, Category::finance,
    Category::pet,     Category::lottery,     Category::loan,
    Category::other,
};

/// One labeled text sample.
///
/// Invariants: text is non-empty after trimming, label is 0/1, and
/// adversarial variants are always scams.
struct Message {
    std::string id;
    std::string text;
    int label = kNotScam;
    Category category = Category::other;
    Variant variant = Variant::original;
};

/// An ordered, immutable-after-load list of messages with unique ids.
struct Corpus {
    std::vector<Message> messages;
    std::string source;

    std::size_t size() const { return messages.size(); }
    bool empty() const { return messages.empty(); }
};

enum class Stratify {
    label,
    category,
    none,
};

/// Deterministic train/test partition request.
struct SplitSpec {
    double test_fraction = 0.2;  // in (0,1)
    std::uint64_t seed = 0;
    Stratify stratify_by = Stratify::none;
};

/// Loads a line-delimited JSON corpus. Any malformed line (bad JSON,
/// missing/unknown key, bad enum value, duplicate id, empty text) rejects
/// the whole file with the offending line number in the error message.
Corpus load_corpus(const std::filesystem::path& path);

/// Writes one canonical JSON object per line (keys id, text, label,
/// category, variant in that order), so load/save round-trips are
/// byte-identical.
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

std::string message_to_json_line(const Message& m);

/// Validates a message against the corpus invariants; throws DataError.
void validate_message(const Message& m);

/// Splits into (train, test). Deterministic for a fixed (corpus, spec);
/// the two sides partition the input and preserve its order. Each stratum
/// must be able to place at least one sample on both sides.
std::pair<Corpus, Corpus> split(const Corpus& corpus, const SplitSpec& spec);

}  // namespace scamdet
