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

#include "scamdet/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "scamdet/errors.hpp"
#include "scamdet/kernels.hpp"
#include "scamdet/rng.hpp"

namespace scamdet {

namespace {

// Decodes one UTF-8 codepoint starting at `i`; on malformed input consumes
// a single byte and reports it as a separator (cp = 0).
std::uint32_t decode_utf8(const std::string& s, std::size_t& i) {
    const auto first = static_cast<unsigned char>(s[i]);
    int extra = 0;
    std::uint32_t cp = 0;
    if (first < 0x80) {
        cp = first;
    } else if ((first & 0xE0) == 0xC0) {
        cp = first & 0x1F;
        extra = 1;
    } else if ((first & 0xF0) == 0xE0) {
        cp = first & 0x0F;
        extra = 2;
    } else if ((first & 0xF8) == 0xF0) {
        cp = first & 0x07;
        extra = 3;
    } else {
        ++i;
        return 0;
    }
    if (i + static_cast<std::size_t>(extra) >= s.size()) {
        ++i;
        return 0;
    }
    for (int k = 1; k <= extra; ++k) {
        const auto cont = static_cast<unsigned char>(s[i + k]);
        if ((cont & 0xC0) != 0x80) {
            ++i;
            return 0;
        }
        cp = (cp << 6) | (cont & 0x3F);
    }
    i += extra + 1;
    return cp;
}

bool is_word_codepoint(std::uint32_t cp) {
    if (cp < 0x80) {
        return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
               (cp >= 'A' && cp <= 'Z');
    }
    // Non-ASCII text is kept inside tokens except for the common Unicode
    // space and punctuation blocks.
    if (cp == 0xA0 || cp == 0xAB || cp == 0xBB) return false;       // nbsp, guillemets
    if (cp >= 0x2000 && cp <= 0x206F) return false;                 // general punctuation
    if (cp >= 0x2E00 && cp <= 0x2E7F) return false;                 // supplemental punct
    if (cp >= 0x3000 && cp <= 0x303F) return false;                 // CJK punctuation
    if (cp >= 0xFE50 && cp <= 0xFE6F) return false;                 // small form variants
    if (cp >= 0xFF01 && cp <= 0xFF0F) return false;                 // fullwidth punct
    if (cp >= 0xFF1A && cp <= 0xFF20) return false;
    return true;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    while (i < text.size()) {
        const std::size_t start = i;
        const std::uint32_t cp = decode_utf8(text, i);
        if (cp != 0 && is_word_codepoint(cp)) {
            if (cp < 0x80) {
                char c = static_cast<char>(cp);
                if (c >= 'A' && c <= 'Z') {
                    c = static_cast<char>(c - 'A' + 'a');
                }
                current.push_back(c);
            } else {
                current.append(text, start, i - start);
            }
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        tokens.push_back(std::move(current));
    }
    return tokens;
}

double Vocabulary::idf(std::size_t term_index) const {
    return std::log((1.0 + n_docs) / (1.0 + doc_freq[term_index])) + 1.0;
}

std::uint64_t Vocabulary::fingerprint() const {
    std::uint64_t h = fnv1a64("scamdet-vocab-v1");
    const auto mix_u32 = [&h](std::uint32_t v) {
        char bytes[4];
        std::memcpy(bytes, &v, 4);
        h = fnv1a64(std::string_view(bytes, 4), h);
    };
    mix_u32(n_docs);
    mix_u32(max_terms);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        h = fnv1a64(terms[i], h);
        h = fnv1a64(std::string_view("\0", 1), h);
        mix_u32(doc_freq[i]);
    }
    return h;
}

void Vocabulary::rebuild_index() {
    index_.clear();
    index_.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        index_.emplace(terms[i], static_cast<std::uint32_t>(i));
    }
}

double FeatureVector::at(std::uint32_t index) const {
    const auto it = std::lower_bound(indices.begin(), indices.end(), index);
    if (it == indices.end() || *it != index) {
        return 0.0;
    }
    return values[static_cast<std::size_t>(it - indices.begin())];
}

namespace {

// Applies `fn` to each unigram and bigram of the token list.
template <typename Fn>
void for_each_term(const std::vector<std::string>& tokens, Fn&& fn) {
    for (const std::string& t : tokens) {
        fn(t);
    }
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        fn(tokens[i] + " " + tokens[i + 1]);
    }
}

}  // namespace

Vocabulary fit_vocabulary(const Corpus& corpus, std::uint32_t max_terms) {
    if (corpus.empty()) {
        throw DataError("cannot fit a vocabulary on an empty corpus");
    }
    if (max_terms == 0) {
        throw DataError("max_terms must be positive");
    }

    std::unordered_map<std::string, std::uint32_t> df;
    std::vector<std::string> doc_terms;
    for (const Message& m : corpus.messages) {
        doc_terms.clear();
        for_each_term(tokenize(m.text),
                      [&doc_terms](const std::string& t) { doc_terms.push_back(t); });
        std::sort(doc_terms.begin(), doc_terms.end());
        doc_terms.erase(std::unique(doc_terms.begin(), doc_terms.end()),
                        doc_terms.end());
        for (const std::string& t : doc_terms) {
            ++df[t];
        }
    }

    std::vector<std::pair<std::string, std::uint32_t>> retained;
    retained.reserve(df.size());
    for (auto& [term, count] : df) {
        if (count >= kMinDocFreq) {
            retained.emplace_back(term, count);
        }
    }
    std::sort(retained.begin(), retained.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) {
                      return a.second > b.second;
                  }
                  return a.first < b.first;
              });
    if (retained.size() > max_terms) {
        retained.resize(max_terms);
    }

    Vocabulary vocab;
    vocab.n_docs = static_cast<std::uint32_t>(corpus.size());
    vocab.max_terms = max_terms;
    vocab.terms.reserve(retained.size());
    vocab.doc_freq.reserve(retained.size());
    for (auto& [term, count] : retained) {
        vocab.terms.push_back(std::move(term));
        vocab.doc_freq.push_back(count);
    }
    vocab.rebuild_index();
    return vocab;
}

FeatureVector vectorize(const Vocabulary& vocab, const std::string& text) {
    std::unordered_map<std::uint32_t, std::uint32_t> counts;
    const auto& index = vocab.index();
    for_each_term(tokenize(text), [&](const std::string& term) {
        const auto it = index.find(term);
        if (it != index.end()) {
            ++counts[it->second];
        }
    });

    FeatureVector fv;
    fv.dim = static_cast<std::uint32_t>(vocab.size());
    fv.indices.reserve(counts.size());
    for (const auto& [idx, _] : counts) {
        fv.indices.push_back(idx);
    }
    std::sort(fv.indices.begin(), fv.indices.end());
    fv.values.reserve(fv.indices.size());
    for (const std::uint32_t idx : fv.indices) {
        const double tf = counts[idx];
        fv.values.push_back(tf * vocab.idf(idx));
    }

    const double sq =
        kernels::dot(fv.values.data(), fv.values.data(), fv.values.size());
    if (sq > 0.0) {
        kernels::scale(fv.values.data(), fv.values.size(),
                       1.0 / std::sqrt(sq));
    }
    return fv;
}

}  // namespace scamdet
