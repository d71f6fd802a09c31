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

#include "scamdet/augment.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "scamdet/errors.hpp"
#include "scamdet/rng.hpp"

namespace scamdet {

namespace {

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return out;
}

std::vector<std::string> split_ws(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        tokens.push_back(std::move(token));
    }
    return tokens;
}

std::string join_ws(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) {
            out.push_back(' ');
        }
        out += tokens[i];
    }
    return out;
}

}  // namespace

void SynonymLexicon::add(std::string lemma, std::vector<std::string> synonyms) {
    if (lemma.empty() || synonyms.empty()) {
        throw DataError("lexicon entries need a lemma and at least one synonym");
    }
    std::string key = ascii_lower(lemma);
    if (synonyms.size() == 1 && ascii_lower(synonyms.front()) == key) {
        throw DataError("lexicon entry '" + key +
                        "' maps to itself as its only synonym");
    }
    entries[std::move(key)] = std::move(synonyms);
}

SynonymLexicon SynonymLexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open lexicon: " + path.string());
    }
    SynonymLexicon lexicon;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw SchemaError(path.string() + ":" + std::to_string(line_no) +
                              ": expected 'lemma<TAB>syn1,syn2,...'");
        }
        std::vector<std::string> synonyms;
        std::string synonym;
        std::istringstream rest(line.substr(tab + 1));
        while (std::getline(rest, synonym, ',')) {
            if (!synonym.empty()) {
                synonyms.push_back(synonym);
            }
        }
        try {
            lexicon.add(line.substr(0, tab), std::move(synonyms));
        } catch (const Error& e) {
            throw SchemaError(path.string() + ":" + std::to_string(line_no) +
                              ": " + e.what());
        }
    }
    return lexicon;
}

const std::vector<std::string>* SynonymLexicon::lookup(
    std::string_view word) const {
    const auto it = entries.find(ascii_lower(word));
    return it == entries.end() ? nullptr : &it->second;
}

void AugmentConfig::validate() const {
    if (p_delete < 0.0 || p_delete > 1.0 || p_synonym < 0.0 ||
        p_synonym > 1.0) {
        throw DataError("transform probabilities must be in [0, 1]");
    }
    if (min_tokens_after_delete < 1) {
        throw DataError("min_tokens_after_delete must be >= 1");
    }
}

namespace {

bool is_ascii_alnum(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
           (c >= 'A' && c <= 'Z');
}

// Splits a whitespace token into (leading punctuation, core word,
// trailing punctuation) so "(Urgent!)" can match the lexicon entry for
// "urgent" and keep its decoration.
struct TokenParts {
    std::string_view prefix;
    std::string_view core;
    std::string_view suffix;
};

TokenParts split_token(const std::string& token) {
    std::size_t begin = 0;
    while (begin < token.size() && !is_ascii_alnum(token[begin])) {
        ++begin;
    }
    std::size_t end = token.size();
    while (end > begin && !is_ascii_alnum(token[end - 1])) {
        --end;
    }
    const std::string_view view(token);
    return TokenParts{view.substr(0, begin), view.substr(begin, end - begin),
                      view.substr(end)};
}

std::string match_leading_capital(std::string_view original,
                                  std::string replacement) {
    if (!original.empty() && original.front() >= 'A' &&
        original.front() <= 'Z' && !replacement.empty() &&
        replacement.front() >= 'a' && replacement.front() <= 'z') {
        replacement.front() =
            static_cast<char>(replacement.front() - 'a' + 'A');
    }
    return replacement;
}

}  // namespace

std::string synonym_replace(const std::string& text,
                            const SynonymLexicon& lexicon,
                            const AugmentConfig& config) {
    config.validate();
    std::vector<std::string> tokens = split_ws(text);
    Rng rng(config.seed);
    for (std::string& token : tokens) {
        const TokenParts parts = split_token(token);
        if (parts.core.empty()) {
            continue;
        }
        const std::vector<std::string>* synonyms = lexicon.lookup(parts.core);
        if (synonyms == nullptr) {
            continue;
        }
        if (!rng.bernoulli(config.p_synonym)) {
            continue;
        }
        const std::string& pick =
            (*synonyms)[rng.next_below(synonyms->size())];
        token = std::string(parts.prefix) +
                match_leading_capital(parts.core, pick) +
                std::string(parts.suffix);
    }
    return join_ws(tokens);
}

std::string random_delete(const std::string& text,
                          const AugmentConfig& config) {
    config.validate();
    const std::vector<std::string> tokens = split_ws(text);
    if (tokens.empty()) {
        throw DataError("random_delete requires at least one token");
    }
    Rng rng(config.seed);
    std::vector<bool> kept(tokens.size());
    std::size_t kept_count = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        kept[i] = !rng.bernoulli(config.p_delete);
        kept_count += kept[i] ? 1 : 0;
    }

    // Floor rule: the deletion pass may annihilate short messages, but
    // corpus texts must stay non-empty. Restore uniformly chosen deleted
    // tokens (in their original positions) up to the floor.
    const std::size_t floor_count = std::min(
        tokens.size(), static_cast<std::size_t>(config.min_tokens_after_delete));
    while (kept_count < floor_count) {
        std::size_t pick = rng.next_below(tokens.size() - kept_count);
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (!kept[i] && pick-- == 0) {
                kept[i] = true;
                ++kept_count;
                break;
            }
        }
    }

    std::vector<std::string> survivors;
    survivors.reserve(kept_count);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (kept[i]) {
            survivors.push_back(tokens[i]);
        }
    }
    return join_ws(survivors);
}

namespace {

bool is_sentence_terminator(char c) {
    return c == '.' || c == '!' || c == '?';
}

std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<std::string> sentences;
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_sentence_terminator(text[i])) {
            while (i + 1 < text.size() && is_sentence_terminator(text[i + 1])) {
                ++i;
            }
            const bool at_boundary =
                i + 1 >= text.size() ||
                std::isspace(static_cast<unsigned char>(text[i + 1])) != 0;
            if (at_boundary) {
                std::string sentence = text.substr(start, i + 1 - start);
                // trim surrounding whitespace
                const auto first = sentence.find_first_not_of(" \t\r\n");
                const auto last = sentence.find_last_not_of(" \t\r\n");
                if (first != std::string::npos) {
                    sentences.push_back(
                        sentence.substr(first, last - first + 1));
                }
                start = i + 1;
            }
        }
        ++i;
    }
    if (start < text.size()) {
        std::string tail = text.substr(start);
        const auto first = tail.find_first_not_of(" \t\r\n");
        const auto last = tail.find_last_not_of(" \t\r\n");
        if (first != std::string::npos) {
            sentences.push_back(tail.substr(first, last - first + 1));
        }
    }
    return sentences;
}

}  // namespace

std::string shuffle_sentences(const std::string& text,
                              const AugmentConfig& config) {
    config.validate();
    std::vector<std::string> sentences = split_sentences(text);
    if (sentences.size() <= 1) {
        return text;
    }
    Rng rng(config.seed);
    rng.shuffle(sentences);
    return join_ws(sentences);
}

std::string_view to_string(Transform t) {
    switch (t) {
        case Transform::synonym_replace: return "synonym_replace";
        case Transform::random_delete: return "random_delete";
        case Transform::shuffle_sentences: return "shuffle_sentences";
    }
    return "unknown";
}

Transform transform_from_string(std::string_view s) {
    for (Transform t : {Transform::synonym_replace, Transform::random_delete,
                        Transform::shuffle_sentences}) {
        if (s == to_string(t)) {
            return t;
        }
    }
    throw UsageError("unknown transform '" + std::string(s) + "'");
}

Corpus augment_corpus(const Corpus& corpus, const SynonymLexicon& lexicon,
                      const AugmentConfig& config,
                      std::span<const Transform> transforms,
                      bool keep_originals) {
    config.validate();
    if (transforms.empty()) {
        throw DataError("augment_corpus requires at least one transform");
    }

    Corpus out;
    out.source = corpus.source + "#augmented";
    out.messages.reserve(corpus.size() *
                         (transforms.size() + (keep_originals ? 1 : 0)));
    for (const Message& m : corpus.messages) {
        if (keep_originals) {
            out.messages.push_back(m);
        }
        for (std::size_t t = 0; t < transforms.size(); ++t) {
            Message aug = m;
            aug.id = m.id + "#aug" + std::to_string(t + 1);
            aug.variant = Variant::augmented;

            AugmentConfig local = config;
            local.seed = derive_seed(config.seed, aug.id);
            switch (transforms[t]) {
                case Transform::synonym_replace:
                    aug.text = synonym_replace(m.text, lexicon, local);
                    break;
                case Transform::random_delete:
                    aug.text = random_delete(m.text, local);
                    break;
                case Transform::shuffle_sentences:
                    aug.text = shuffle_sentences(m.text, local);
                    break;
            }
            validate_message(aug);
            out.messages.push_back(std::move(aug));
        }
    }
    return out;
}

namespace {

constexpr std::array<std::string_view, 6> kRewriteGuidelines = {
    "Format: Generate only the message content without any subject line or "
    "email header.",
    "Remove Obvious Scam Indicators: Avoid urgent requests or unusual "
    "payment demands.",
    "Adjust Tone: Use a professional, neutral tone throughout the message.",
    "Retain Key Content: Preserve the core information of the scam while "
    "rephrasing it in a more legitimate manner.",
    "Add Limited Credibility: Include general references to known locations "
    "or institutions sparingly to subtly enhance credibility.",
    "Avoid Placeholders: Do not use placeholder text such as [Your Name], "
    "[Position], [Contact], [Company], or [Location]. Use specific details "
    "instead.",
};

}  // namespace

const std::array<std::string_view, 6>& rewrite_guidelines() {
    return kRewriteGuidelines;
}

PromptTemplate build_rewrite_prompt(const Message& message) {
    if (message.label != kScam) {
        throw DataError(
            "rewrite prompts are only defined for scam-labeled messages");
    }
    std::string system =
        "You are an assistant rephrasing scam messages for research "
        "purposes. Follow these guidelines for all rewrites:\n";
    for (std::size_t i = 0; i < kRewriteGuidelines.size(); ++i) {
        system += std::to_string(i + 1) + ". ";
        system += kRewriteGuidelines[i];
        system += '\n';
    }
    return PromptTemplate{std::move(system), message.text};
}

}  // namespace scamdet
