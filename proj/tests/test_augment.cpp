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

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <doctest.h>

#include "scamdet/augment.hpp"
#include "scamdet/errors.hpp"
#include "scamdet/rng.hpp"
#include "support.hpp"

using namespace scamdet;
using scamdet::testing::TempDir;
using scamdet::testing::make_message;

namespace {

SynonymLexicon tiny_lexicon() {
    SynonymLexicon lexicon;
    lexicon.add("urgent", {"important"});
    lexicon.add("money", {"funds", "cash"});
    lexicon.add("free", {"complimentary"});
    return lexicon;
}

std::vector<std::string> words_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string w;
    while (in >> w) {
        out.push_back(w);
    }
    return out;
}

// Independent sentence splitter for the conservation check.
std::multiset<std::string> sentence_multiset(const std::string& text) {
    std::multiset<std::string> out;
    std::string current;
    for (std::size_t i = 0; i < text.size(); ++i) {
        current.push_back(text[i]);
        const bool terminator =
            text[i] == '.' || text[i] == '!' || text[i] == '?';
        const bool boundary =
            terminator && (i + 1 >= text.size() || text[i + 1] == ' ');
        if (boundary) {
            while (!current.empty() && current.front() == ' ') {
                current.erase(current.begin());
            }
            if (!current.empty()) {
                out.insert(current);
            }
            current.clear();
        }
    }
    while (!current.empty() && current.front() == ' ') {
        current.erase(current.begin());
    }
    if (!current.empty()) {
        out.insert(current);
    }
    return out;
}

}  // namespace

TEST_CASE("synonym_replace with probability zero is the identity") {
    AugmentConfig config;
    config.p_synonym = 0.0;
    config.seed = 1;
    const std::string text = "urgent money for free";
    CHECK(synonym_replace(text, tiny_lexicon(), config) == text);
}

TEST_CASE("synonym_replace swaps every eligible token at probability one") {
    AugmentConfig config;
    config.p_synonym = 1.0;
    config.seed = 1;
    SynonymLexicon lexicon;
    lexicon.add("urgent", {"important"});
    CHECK(synonym_replace("urgent reply", lexicon, config) ==
          "important reply");
    // leading capital is preserved, punctuation decoration kept
    CHECK(synonym_replace("Urgent reply!", lexicon, config) ==
          "Important reply!");
    CHECK(synonym_replace("(urgent)", lexicon, config) == "(important)");
}

TEST_CASE("synonym_replace preserves token count and foreign tokens") {
    AugmentConfig config;
    config.p_synonym = 1.0;
    config.seed = 9;
    const std::string text = "send money quickly for free stuff";
    const std::string out = synonym_replace(text, tiny_lexicon(), config);
    const auto in_words = words_of(text);
    const auto out_words = words_of(out);
    REQUIRE(in_words.size() == out_words.size());
    CHECK(out_words[0] == "send");
    CHECK(out_words[2] == "quickly");
    CHECK((out_words[1] == "funds" || out_words[1] == "cash"));
    CHECK(out_words[4] == "complimentary");
}

TEST_CASE("synonym replacement count lands in the binomial band") {
    std::string text;
    for (int i = 0; i < 10000; ++i) {
        text += "money ";
    }
    AugmentConfig config;
    config.p_synonym = 0.1;
    config.seed = 4242;
    const std::string out = synonym_replace(text, tiny_lexicon(), config);
    int replaced = 0;
    for (const auto& w : words_of(out)) {
        replaced += w != "money" ? 1 : 0;
    }
    CHECK(replaced >= 900);
    CHECK(replaced <= 1100);
}

TEST_CASE("random_delete basics") {
    AugmentConfig config;
    config.p_delete = 0.0;
    config.seed = 3;
    CHECK(random_delete("keep  all   tokens", config) == "keep all tokens");

    config.p_delete = 1.0;
    const std::string out = random_delete("solitary", config);
    CHECK(out == "solitary");  // floor rule retains the only token

    CHECK_THROWS_AS(random_delete("   ", config), DataError);
}

TEST_CASE("random_delete floor rule keeps one of many") {
    AugmentConfig config;
    config.p_delete = 1.0;
    config.seed = 8;
    const std::string out = random_delete("a b c d e", config);
    const auto words = words_of(out);
    REQUIRE(words.size() == 1);
    const std::vector<std::string> pool = {"a", "b", "c", "d", "e"};
    CHECK(std::find(pool.begin(), pool.end(), words[0]) != pool.end());
}

TEST_CASE("random_delete empirical rate converges to one tenth") {
    std::string text;
    for (int i = 0; i < 100000; ++i) {
        text += "tok ";
    }
    AugmentConfig config;
    config.p_delete = 0.10;
    config.seed = 99;
    const std::string out = random_delete(text, config);
    const double kept = static_cast<double>(words_of(out).size());
    const double rate = 1.0 - kept / 100000.0;
    CHECK(rate >= 0.09);
    CHECK(rate <= 0.11);
}

TEST_CASE("shuffle_sentences permutes with a frozen seed fixture") {
    // seed chosen so the permutation of three sentences is (2,0,1)
    AugmentConfig config;
    config.seed = 23;
    const std::string out = shuffle_sentences("A. B. C.", config);
    CHECK(out == "C. A. B.");
}

TEST_CASE("shuffle_sentences identity cases") {
    AugmentConfig config;
    config.seed = 11;
    CHECK(shuffle_sentences("just one sentence.", config) ==
          "just one sentence.");
    CHECK(shuffle_sentences("no terminator at all", config) ==
          "no terminator at all");
    CHECK(shuffle_sentences("", config).empty());
}

TEST_CASE("shuffle_sentences conserves the sentence multiset") {
    Rng rng(55);
    const std::vector<std::string> bits = {"Hello there",  "Send the fee",
                                           "See you soon", "Win big now",
                                           "Call me",      "It is done"};
    const std::vector<std::string> terms = {".", "!", "?", "..."};
    for (int trial = 0; trial < 1000; ++trial) {
        std::string text;
        const std::size_t n = 1 + rng.next_below(6);
        for (std::size_t i = 0; i < n; ++i) {
            text += bits[rng.next_below(bits.size())];
            text += terms[rng.next_below(terms.size())];
            text += ' ';
        }
        AugmentConfig config;
        config.seed = rng.next_u64();
        const std::string out = shuffle_sentences(text, config);
        CHECK(sentence_multiset(out) == sentence_multiset(text));
    }
}

TEST_CASE("transforms are deterministic under a fixed seed") {
    const std::string text =
        "Urgent money offer. Claim your free prize now! Reply soon.";
    AugmentConfig config;
    config.seed = 1234;
    const SynonymLexicon lexicon = tiny_lexicon();
    CHECK(synonym_replace(text, lexicon, config) ==
          synonym_replace(text, lexicon, config));
    CHECK(random_delete(text, config) == random_delete(text, config));
    CHECK(shuffle_sentences(text, config) == shuffle_sentences(text, config));
}

TEST_CASE("augment_corpus grows the corpus by one copy per transform") {
    Corpus corpus;
    for (int i = 0; i < 10; ++i) {
        corpus.messages.push_back(make_message(
            "m" + std::to_string(i),
            "Urgent money here. Please send the fee now!", kScam,
            Category::finance));
    }
    const std::vector<Transform> transforms = {Transform::synonym_replace,
                                               Transform::random_delete,
                                               Transform::shuffle_sentences};
    AugmentConfig config;
    config.seed = 2;

    const Corpus out =
        augment_corpus(corpus, tiny_lexicon(), config, transforms, true);
    CHECK(out.size() == 40);  // originals + 3 copies each

    // ids derive from the source id and transform slot
    CHECK(out.messages[0].id == "m0");
    CHECK(out.messages[1].id == "m0#aug1");
    CHECK(out.messages[2].id == "m0#aug2");
    CHECK(out.messages[3].id == "m0#aug3");
    CHECK(out.messages[1].variant == Variant::augmented);
    CHECK(out.messages[1].label == kScam);
    CHECK(out.messages[1].category == Category::finance);

    const Corpus no_originals =
        augment_corpus(corpus, tiny_lexicon(), config, transforms, false);
    CHECK(no_originals.size() == 30);

    CHECK_THROWS_AS(
        augment_corpus(corpus, tiny_lexicon(), config, {}, true),
        DataError);

    // determinism: byte-identical output corpora
    const Corpus again =
        augment_corpus(corpus, tiny_lexicon(), config, transforms, true);
    REQUIRE(again.size() == out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        CHECK(again.messages[i].id == out.messages[i].id);
        CHECK(again.messages[i].text == out.messages[i].text);
    }
}

TEST_CASE("lexicon flat file parsing") {
    TempDir dir;
    const auto path = dir.file("lex.tsv");
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "urgent\timportant,pressing\n";
        out << "money\tfunds\n";
    }
    const SynonymLexicon lexicon = SynonymLexicon::load(path);
    CHECK(lexicon.size() == 2);
    REQUIRE(lexicon.lookup("URGENT") != nullptr);
    CHECK(lexicon.lookup("urgent")->size() == 2);
    CHECK(lexicon.lookup("absent") == nullptr);

    const auto bad = dir.file("bad.tsv");
    {
        std::ofstream out(bad);
        out << "no-tab-here\n";
    }
    CHECK_THROWS_WITH_AS(SynonymLexicon::load(bad), doctest::Contains(":1:"),
                         SchemaError);

    // self-mapping single synonym is rejected
    SynonymLexicon self;
    CHECK_THROWS_AS(self.add("word", {"word"}), DataError);
    CHECK_NOTHROW(self.add("word", {"word", "term"}));
}

TEST_CASE("the shipped starter lexicon loads and is usable") {
    const SynonymLexicon lexicon = SynonymLexicon::load(
        std::filesystem::path(SCAMDET_SOURCE_DIR) / "data" / "synonyms.tsv");
    CHECK(lexicon.size() >= 200);
    REQUIRE(lexicon.lookup("urgent") != nullptr);
    const auto& synonyms = *lexicon.lookup("urgent");
    CHECK(std::find(synonyms.begin(), synonyms.end(), "important") !=
          synonyms.end());

    AugmentConfig config;
    config.p_synonym = 1.0;
    config.seed = 0;
    const std::string out =
        synonym_replace("Urgent money transfer", lexicon, config);
    CHECK(out != "Urgent money transfer");  // every eligible token replaced
}

TEST_CASE("rewrite guidelines are fixed and ordered") {
    const auto& guidelines = rewrite_guidelines();
    REQUIRE(guidelines.size() == 6);
    CHECK(guidelines[0].find("Format:") == 0);
    CHECK(guidelines[1].find("Remove Obvious Scam Indicators:") == 0);
    CHECK(guidelines[2].find("Adjust Tone:") == 0);
    CHECK(guidelines[3].find("Retain Key Content:") == 0);
    CHECK(guidelines[4].find("Add Limited Credibility:") == 0);
    CHECK(guidelines[5].find("Avoid Placeholders:") == 0);
    CHECK(guidelines[5].find("[Your Name]") != std::string_view::npos);
}

TEST_CASE("build_rewrite_prompt embeds the guidelines in order") {
    const Message scam = make_message("s1", "Send the fee to claim the prize.",
                                      kScam, Category::lottery);
    const PromptTemplate prompt = build_rewrite_prompt(scam);
    std::size_t cursor = 0;
    for (const auto& guideline : rewrite_guidelines()) {
        const auto pos = prompt.system_instruction.find(
            std::string(guideline), cursor);
        REQUIRE(pos != std::string::npos);
        cursor = pos + guideline.size();
    }
    CHECK(prompt.user_content == scam.text);

    const Message ham = make_message("h1", "see you at lunch", kNotScam);
    CHECK_THROWS_AS(build_rewrite_prompt(ham), DataError);
}
