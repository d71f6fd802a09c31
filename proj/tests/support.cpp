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

#include "support.hpp"

namespace scamdet::testing {

namespace {

const std::vector<std::string>& scam_markers() {
    static const std::vector<std::string> words = {
        "wire",      "transfer",  "winner",    "prize",     "claim",
        "inheritance", "beneficiary", "lottery", "urgent",  "kindly",
        "remit",     "untraceable", "giftcard", "verify",   "password",
        "bitcoin",   "payout",    "customs",   "clearance", "fee",
        "overseas",  "guaranteed", "jackpot",  "consignment"};
    return words;
}

const std::vector<std::string>& benign_markers() {
    static const std::vector<std::string> words = {
        "meeting",  "agenda",   "invoice",  "schedule", "lunch",
        "report",   "quarterly", "standup", "deadline", "review",
        "feedback", "calendar", "notes",    "slides",   "sprint",
        "release",  "weekend",  "birthday", "thanks",   "project",
        "draft",    "holiday",  "reminder", "team"};
    return words;
}

const std::vector<std::string>& fillers() {
    static const std::vector<std::string> words = {
        "the",   "a",     "please", "your",  "about", "regarding", "we",
        "you",   "will",  "can",    "have",  "this",  "that",      "for",
        "with",  "from",  "hello",  "hi",    "dear",  "friend",    "today",
        "tomorrow", "soon", "now",  "very",  "more",  "details",   "reply",
        "contact", "message", "information", "let",  "know",      "best",
        "regards", "sincerely", "and", "also", "just", "here"};
    return words;
}

constexpr Category kScamCategories[] = {Category::romance, Category::recruitment,
                                        Category::finance, Category::pet,
                                        Category::lottery, Category::loan};

std::string pick(const std::vector<std::string>& pool, Rng& rng) {
    return pool[rng.next_below(pool.size())];
}

std::string compose_text(const std::vector<std::string>& markers,
                         int filler_tokens, Rng& rng) {
    std::vector<std::string> words = markers;
    for (int i = 0; i < filler_tokens; ++i) {
        words.push_back(pick(fillers(), rng));
    }
    rng.shuffle(words);
    std::string text;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i > 0) {
            text += (i % 7 == 0) ? std::string(". ") : std::string(" ");
        }
        text += words[i];
    }
    text += '.';
    return text;
}

}  // namespace

Corpus make_synthetic_corpus(const SyntheticSpec& spec) {
    Corpus corpus;
    corpus.source = "synthetic";
    Rng rng(spec.seed);
    for (std::size_t i = 0; i < spec.n_messages; ++i) {
        const bool scam = rng.bernoulli(spec.scam_fraction);
        std::vector<std::string> markers;
        for (int s = 0; s < spec.marker_slots; ++s) {
            const bool flipped = rng.bernoulli(spec.marker_noise);
            const bool use_scam_pool = scam != flipped;
            markers.push_back(
                pick(use_scam_pool ? scam_markers() : benign_markers(), rng));
        }
        Message m;
        m.id = "syn-" + std::to_string(i);
        m.text = compose_text(markers, spec.filler_tokens, rng);
        m.label = scam ? kScam : kNotScam;
        m.category = scam ? kScamCategories[i % 6] : Category::other;
        m.variant = Variant::original;
        corpus.messages.push_back(std::move(m));
    }
    return corpus;
}

Corpus make_disagreement_corpus(const SyntheticSpec& spec,
                                double ambiguous_fraction,
                                std::size_t n_messages) {
    Corpus corpus;
    corpus.source = "synthetic-ambiguous";
    Rng rng(derive_seed(spec.seed, "disagreement"));
    for (std::size_t i = 0; i < n_messages; ++i) {
        const bool ambiguous = rng.next_double() < ambiguous_fraction;
        const bool scam = rng.bernoulli(spec.scam_fraction);
        std::vector<std::string> markers;
        if (ambiguous) {
            // Evenly mixed signals with extra rare-word noise: the four
            // learners genuinely split on these.
            for (int s = 0; s < spec.marker_slots; ++s) {
                const bool use_scam_pool = (s % 2 == 0) != (i % 2 == 0);
                markers.push_back(pick(
                    use_scam_pool ? scam_markers() : benign_markers(), rng));
            }
        } else {
            for (int s = 0; s < spec.marker_slots; ++s) {
                markers.push_back(
                    pick(scam ? scam_markers() : benign_markers(), rng));
            }
        }
        Message m;
        m.id = "amb-" + std::to_string(i);
        m.text = compose_text(markers, spec.filler_tokens, rng);
        m.label = scam ? kScam : kNotScam;
        m.category = scam ? kScamCategories[i % 6] : Category::other;
        m.variant = Variant::original;
        corpus.messages.push_back(std::move(m));
    }
    return corpus;
}

}  // namespace scamdet::testing
