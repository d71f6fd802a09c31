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

#include "scamdet/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "scamdet/errors.hpp"
#include "scamdet/rng.hpp"

namespace scamdet {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Category c) {
    switch (c) {
        case Category::romance: return "romance";
        case Category::recruitment: return "recruitment";
        case Category::finance: return "finance";
        case Category::pet: return "pet";
        case Category::lottery: return "lottery";
        case Category::loan: return "loan";
        case Category::other: return "other";
    }
    return "other";
}

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::original: return "original";
        case Variant::adversarial: return "adversarial";
        case Variant::augmented: return "augmented";
    }
    return "original";
}

Category category_from_string(std::string_view s) {
    for (Category c : kAllCategories) {
        if (s == to_string(c)) {
            return c;
        }
    }
    throw SchemaError("unknown category '" + std::string(s) + "'");
}

Variant variant_from_string(std::string_view s) {
    for (Variant v : {Variant::original, Variant::adversarial, Variant::augmented}) {
        if (s == to_string(v)) {
            return v;
        }
    }
    throw SchemaError("unknown variant '" + std::string(s) + "'");
}

namespace {

bool is_blank(std::string_view text) {
    return std::all_of(text.begin(), text.end(), [](unsigned char c) {
        return std::isspace(c) != 0;
    });
}

constexpr std::string_view kMessageKeys[] = {"id", "text", "label",
                                             "category", "variant"};

Message parse_message(const ordered_json& j) {
    if (!j.is_object()) {
        throw SchemaError("record is not a JSON object");
    }
    for (const auto& [key, _] : j.items()) {
        if (std::find(std::begin(kMessageKeys), std::end(kMessageKeys), key) ==
            std::end(kMessageKeys)) {
            throw SchemaError("unknown key '" + key + "'");
        }
    }
    for (std::string_view key : kMessageKeys) {
        if (!j.contains(key)) {
            throw SchemaError("missing key '" + std::string(key) + "'");
        }
    }
    if (!j["id"].is_string() || !j["text"].is_string() ||
        !j["label"].is_string() || !j["category"].is_string() ||
        !j["variant"].is_string()) {
        throw SchemaError("all message fields must be strings");
    }

    Message m;
    m.id = j["id"].get<std::string>();
    m.text = j["text"].get<std::string>();
    const auto label = j["label"].get<std::string>();
    if (label == "scam") {
        m.label = kScam;
    } else if (label == "not_scam") {
        m.label = kNotScam;
    } else {
        throw SchemaError("unknown label '" + label + "'");
    }
    m.category = category_from_string(j["category"].get<std::string>());
    m.variant = variant_from_string(j["variant"].get<std::string>());
    validate_message(m);
    return m;
}

}  // namespace

void validate_message(const Message& m) {
    if (m.id.empty()) {
        throw DataError("message id must be non-empty");
    }
    if (m.text.empty() || is_blank(m.text)) {
        throw DataError("message text must be non-empty after trimming");
    }
    if (m.label != kScam && m.label != kNotScam) {
        throw DataError("label must be 0 or 1");
    }
    if (m.variant == Variant::adversarial && m.label != kScam) {
        throw DataError("adversarial variants must carry the scam label");
    }
}

Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open corpus file: " + path.string());
    }

    Corpus corpus;
    corpus.source = path.string();
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            throw SchemaError(path.string() + ":" + std::to_string(line_no) +
                              ": empty line");
        }
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError(path.string() + ":" + std::to_string(line_no) +
                              ": invalid JSON: " + e.what());
        }
        Message m;
        try {
            m = parse_message(j);
        } catch (const Error& e) {
            throw SchemaError(path.string() + ":" + std::to_string(line_no) +
                              ": " + e.what());
        }
        if (!seen_ids.insert(m.id).second) {
            throw SchemaError(path.string() + ":" + std::to_string(line_no) +
                              ": duplicate id '" + m.id + "'");
        }
        corpus.messages.push_back(std::move(m));
    }
    if (in.bad()) {
        throw IoError("read failure on corpus file: " + path.string());
    }
    return corpus;
}

std::string message_to_json_line(const Message& m) {
    ordered_json j;
    j["id"] = m.id;
    j["text"] = m.text;
    j["label"] = m.label == kScam ? "scam" : "not_scam";
    j["category"] = to_string(m.category);
    j["variant"] = to_string(m.variant);
    return j.dump();
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open corpus file for writing: " + path.string());
    }
    for (const Message& m : corpus.messages) {
        validate_message(m);
        out << message_to_json_line(m) << '\n';
    }
    out.flush();
    if (!out) {
        throw IoError("write failure on corpus file: " + path.string());
    }
}

namespace {

std::string stratum_key(const Message& m, Stratify by) {
    switch (by) {
        case Stratify::label:
            return m.label == kScam ? "scam" : "not_scam";
        case Stratify::category:
            return std::string(to_string(m.category));
        case Stratify::none:
            return "";
    }
    return "";
}

}  // namespace

std::pair<Corpus, Corpus> split(const Corpus& corpus, const SplitSpec& spec) {
    if (corpus.size() < 2) {
        throw DataError("split requires at least 2 messages");
    }
    if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0)) {
        throw DataError("test_fraction must be in (0, 1)");
    }

    // Strata in deterministic key order, members in corpus order.
    std::map<std::string, std::vector<std::size_t>> strata;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        strata[stratum_key(corpus.messages[i], spec.stratify_by)].push_back(i);
    }

    std::vector<bool> in_test(corpus.size(), false);
    for (auto& [key, indices] : strata) {
        const auto n = indices.size();
        const auto n_test = static_cast<std::size_t>(
            std::llround(spec.test_fraction * static_cast<double>(n)));
        if (n_test == 0 || n_test >= n) {
            std::ostringstream msg;
            msg << "stratum '" << (key.empty() ? "<all>" : key) << "' with "
                << n << " message(s) cannot place at least one sample on "
                   "both sides at test_fraction "
                << spec.test_fraction;
            throw DataError(msg.str());
        }
        Rng rng(derive_seed(spec.seed, key));
        std::vector<std::size_t> shuffled = indices;
        rng.shuffle(shuffled);
        for (std::size_t i = 0; i < n_test; ++i) {
            in_test[shuffled[i]] = true;
        }
    }

    Corpus train;
    Corpus test;
    train.source = corpus.source + "#train";
    test.source = corpus.source + "#test";
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        (in_test[i] ? test : train).messages.push_back(corpus.messages[i]);
    }
    return {std::move(train), std::move(test)};
}

}  // namespace scamdet
