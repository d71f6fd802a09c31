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

#include <doctest.h>

#include "scamdet/errors.hpp"
#include "scamdet/features.hpp"
#include "scamdet/rng.hpp"
#include "support.hpp"

using namespace scamdet;
using scamdet::testing::make_message;

namespace {

Corpus corpus_of(const std::vector<std::string>& texts) {
    Corpus corpus;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        corpus.messages.push_back(
            make_message("d" + std::to_string(i), texts[i], 0));
    }
    return corpus;
}

double l2_norm(const FeatureVector& fv) {
    double sq = 0.0;
    for (const double v : fv.values) {
        sq += v * v;
    }
    return std::sqrt(sq);
}

}  // namespace

TEST_CASE("tokenize lowercases and splits on non-word runs") {
    CHECK(tokenize("Reply for more details!") ==
          std::vector<std::string>{"reply", "for", "more", "details"});
    CHECK(tokenize("").empty());
    CHECK(tokenize("US$5,000") == std::vector<std::string>{"us", "5", "000"});
    CHECK(tokenize("  \t\n ").empty());
    CHECK(tokenize("a-b_c") == std::vector<std::string>{"a", "b", "c"});
    // non-ASCII letters stay inside tokens; Unicode punctuation splits
    CHECK(tokenize("café time") ==
          std::vector<std::string>{"café", "time"});
    CHECK(tokenize("win—now") == std::vector<std::string>{"win", "now"});
}

TEST_CASE("fit_vocabulary applies the min document frequency rule") {
    // "urgent" in two documents is retained; "solo" in one is dropped.
    const Corpus corpus = corpus_of({"urgent reply now", "urgent offer",
                                     "solo word here", "offer reply"});
    const Vocabulary vocab = fit_vocabulary(corpus, 100);
    const auto& index = vocab.index();
    CHECK(index.count("urgent") == 1);
    CHECK(index.count("offer") == 1);
    CHECK(index.count("reply") == 1);
    CHECK(index.count("solo") == 0);
    for (const auto df : vocab.doc_freq) {
        CHECK(df >= 2);
    }
}

TEST_CASE("fit_vocabulary keeps the top terms by document frequency") {
    // 5-doc corpus: "free" appears in 4 docs, everything else in fewer.
    const Corpus corpus = corpus_of({
        "free prize",
        "free money now",
        "free offer money",
        "free claim",
        "prize claim",
    });
    const Vocabulary top1 = fit_vocabulary(corpus, 1);
    REQUIRE(top1.size() == 1);
    CHECK(top1.terms[0] == "free");
    CHECK(top1.doc_freq[0] == 4);

    // ties break lexicographically, order is deterministic
    const Vocabulary full_a = fit_vocabulary(corpus, 100);
    const Vocabulary full_b = fit_vocabulary(corpus, 100);
    CHECK(full_a.terms == full_b.terms);
    for (std::size_t i = 1; i < full_a.terms.size(); ++i) {
        const bool ordered =
            full_a.doc_freq[i - 1] > full_a.doc_freq[i] ||
            (full_a.doc_freq[i - 1] == full_a.doc_freq[i] &&
             full_a.terms[i - 1] < full_a.terms[i]);
        CHECK(ordered);
    }
}

TEST_CASE("fit_vocabulary includes bigrams") {
    const Corpus corpus =
        corpus_of({"wire transfer today", "wire transfer now"});
    const Vocabulary vocab = fit_vocabulary(corpus, 100);
    CHECK(vocab.index().count("wire transfer") == 1);
}

TEST_CASE("fit_vocabulary rejects an empty corpus") {
    CHECK_THROWS_AS(fit_vocabulary(Corpus{}, 10), DataError);
}

TEST_CASE("vectorize handles out-of-vocabulary text") {
    const Corpus corpus = corpus_of({"alpha beta", "alpha beta gamma"});
    const Vocabulary vocab = fit_vocabulary(corpus, 100);
    const FeatureVector fv = vectorize(vocab, "zeta eta theta");
    CHECK(fv.nnz() == 0);
    CHECK(fv.dim == vocab.size());
    CHECK(l2_norm(fv) == 0.0);
}

TEST_CASE("single matching term normalizes to exactly one") {
    const Corpus corpus = corpus_of({"alpha beta", "alpha gamma"});
    const Vocabulary vocab = fit_vocabulary(corpus, 100);
    const FeatureVector fv = vectorize(vocab, "alpha");
    REQUIRE(fv.nnz() == 1);
    CHECK(fv.values[0] == doctest::Approx(1.0));
}

TEST_CASE("pre-normalization values follow tf times idf") {
    // Equal term frequencies: the value ratio must equal the idf ratio
    // computed straight from the formula.
    Vocabulary vocab;
    vocab.terms = {"rare", "common"};
    vocab.doc_freq = {2, 80};
    vocab.n_docs = 100;
    vocab.rebuild_index();

    const FeatureVector fv = vectorize(vocab, "rare common");
    REQUIRE(fv.nnz() == 2);
    const double idf_rare = std::log(101.0 / 3.0) + 1.0;
    const double idf_common = std::log(101.0 / 81.0) + 1.0;
    const double expected_ratio = idf_rare / idf_common;
    const double actual_ratio = fv.values[0] / fv.values[1];
    CHECK(actual_ratio == doctest::Approx(expected_ratio).epsilon(1e-9));
    CHECK(vocab.idf(0) == doctest::Approx(idf_rare));
    CHECK(vocab.idf(1) == doctest::Approx(idf_common));
}

TEST_CASE("vectorize is pure and always unit or zero norm") {
    const Corpus corpus = corpus_of(
        {"win a prize today", "claim your prize", "team lunch agenda",
         "prize claim fee", "quarterly report today"});
    const Vocabulary vocab = fit_vocabulary(corpus, 100);

    Rng rng(99);
    const std::vector<std::string> words = {"win",  "prize", "claim", "fee",
                                            "team", "lunch", "zzz",   "today"};
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        const std::size_t len = 1 + rng.next_below(12);
        for (std::size_t i = 0; i < len; ++i) {
            text += words[rng.next_below(words.size())];
            text += ' ';
        }
        const FeatureVector a = vectorize(vocab, text);
        const FeatureVector b = vectorize(vocab, text);
        CHECK(a.indices == b.indices);
        CHECK(a.values == b.values);

        const double norm = l2_norm(a);
        const bool unit_or_zero =
            norm == 0.0 || std::abs(norm - 1.0) < 1e-9;
        CHECK(unit_or_zero);

        for (std::size_t i = 1; i < a.indices.size(); ++i) {
            CHECK(a.indices[i - 1] < a.indices[i]);
        }
        for (const double v : a.values) {
            CHECK(v > 0.0);
        }
    }
}

TEST_CASE("vocabulary fingerprint tracks content") {
    const Corpus corpus = corpus_of({"alpha beta", "alpha gamma"});
    Vocabulary a = fit_vocabulary(corpus, 100);
    Vocabulary b = fit_vocabulary(corpus, 100);
    CHECK(a.fingerprint() == b.fingerprint());
    b.doc_freq[0] += 1;
    CHECK(a.fingerprint() != b.fingerprint());
}
