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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scamdet/adjudicator.hpp"
#include "scamdet/corpus.hpp"

namespace scamdet {

/// Flat-file synonym table: one line per lemma, `lemma<TAB>syn1,syn2,...`.
/// Lookup is case-insensitive; replacements preserve a leading capital.
/// Any thesaurus export in this format plugs in.
struct SynonymLexicon {
    std::unordered_map<std::string, std::vector<std::string>> entries;

    static SynonymLexicon load(const std::filesystem::path& path);

    /// Adds one entry; throws DataError if the word's only synonym is
    /// itself.
    void add(std::string lemma, std::vector<std::string> synonyms);

    /// nullptr when the (lowercased) word has no entry.
    const std::vector<std::string>* lookup(std::string_view word) const;

    std::size_t size() const { return entries.size(); }
};

/// Knobs for the bounded text transformations. The seed is mandatory:
/// no transform reads ambient randomness.
struct AugmentConfig {
    double p_delete = 0.10;   // per-token deletion probability
    double p_synonym = 0.10;  // per-eligible-token replacement probability
    std::uint64_t seed = 0;
    int min_tokens_after_delete = 1;

    void validate() const;
};

/// Replaces each token that has a lexicon entry, independently with
/// probability p_synonym, by a uniformly chosen synonym. Token count is
/// preserved; tokens without an entry pass through. Whitespace between
/// tokens is normalized to single spaces.
std::string synonym_replace(const std::string& text,
                            const SynonymLexicon& lexicon,
                            const AugmentConfig& config);

/// Deletes each token independently with probability p_delete; if every
/// token would be deleted, one uniformly chosen token is retained so the
/// result is never empty. Whitespace is normalized to single spaces.
std::string random_delete(const std::string& text,
                          const AugmentConfig& config);

/// Applies a seeded uniform permutation to the sentences (split after
/// '.', '!' or '?' runs followed by whitespace or end of text). The
/// sentence multiset is preserved exactly; zero or one sentence is
/// returned unchanged. Terminator-based splitting only, so abbreviations
/// like "Mr." start a new sentence.
std::string shuffle_sentences(const std::string& text,
                              const AugmentConfig& config);

enum class Transform {
    synonym_replace,
    random_delete,
    shuffle_sentences,
};

std::string_view to_string(Transform t);
Transform transform_from_string(std::string_view s);

/// Expands a corpus: per input message, one augmented copy per transform
/// (applied independently to the original), with ids "{id}#aug{n}",
/// variant `augmented`, label and category inherited. Per-message seeds
/// are derived from (config.seed, id), so results are independent of
/// processing order. With originals retained the output has
/// |input| * (1 + |transforms|) messages.
Corpus augment_corpus(const Corpus& corpus, const SynonymLexicon& lexicon,
                      const AugmentConfig& config,
                      std::span<const Transform> transforms,
                      bool keep_originals = true);

/// The six fixed rewrite guidelines, in order; byte-stable across
/// releases.
const std::array<std::string_view, 6>& rewrite_guidelines();

/// Builds the adversarial-rewrite request for a scam message: a rewrite
/// instruction embedding all six guidelines plus the original text. The
/// result is sent through an adjudicator backend in generation mode
/// (raised max_new_tokens is the one sanctioned decoding override).
PromptTemplate build_rewrite_prompt(const Message& message);

}  // namespace scamdet
