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

// Model artifact container: a single JSON document carrying the version,
// the vocabulary and the four model blobs, protected by a checksum over
// the serialized payload. Serialization is canonical (ordered keys,
// shortest round-trip floats), so identical ensembles produce identical
// bytes.

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scamdet/classifiers.hpp"
#include "scamdet/errors.hpp"
#include "scamdet/rng.hpp"

namespace scamdet {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kArtifactVersion = 1;
constexpr std::string_view kArtifactFormat = "scamdet-ensemble";

std::string checksum_hex(std::string_view payload) {
    std::ostringstream out;
    out << std::hex << fnv1a64(payload);
    return out.str();
}

ordered_json tree_to_json(const Tree& tree) {
    ordered_json nodes = ordered_json::array();
    for (const TreeNode& n : tree.nodes) {
        nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
    }
    return nodes;
}

Tree tree_from_json(const ordered_json& j) {
    Tree tree;
    for (const auto& n : j) {
        TreeNode node;
        node.feature = n.at(0).get<std::int32_t>();
        node.threshold = n.at(1).get<double>();
        node.left = n.at(2).get<std::int32_t>();
        node.right = n.at(3).get<std::int32_t>();
        node.value = n.at(4).get<double>();
        tree.nodes.push_back(node);
    }
    if (tree.nodes.empty()) {
        throw SchemaError("artifact tree has no nodes");
    }
    return tree;
}

ordered_json features_to_json(const std::vector<FeatureVector>& rows) {
    ordered_json out = ordered_json::array();
    for (const FeatureVector& fv : rows) {
        out.push_back({{"i", fv.indices}, {"v", fv.values}});
    }
    return out;
}

std::vector<FeatureVector> features_from_json(const ordered_json& j,
                                              std::uint32_t dim) {
    std::vector<FeatureVector> rows;
    for (const auto& r : j) {
        FeatureVector fv;
        fv.dim = dim;
        fv.indices = r.at("i").get<std::vector<std::uint32_t>>();
        fv.values = r.at("v").get<std::vector<double>>();
        if (fv.indices.size() != fv.values.size()) {
            throw SchemaError("artifact feature row is inconsistent");
        }
        rows.push_back(std::move(fv));
    }
    return rows;
}

ordered_json model_to_json(const TrainedModel& model) {
    ordered_json j;
    j["kind"] = to_string(model.kind);
    j["dim"] = model.dim;
    j["vocab_fingerprint"] = model.vocab_fingerprint;
    std::visit(
        [&j](const auto& impl) {
            using T = std::decay_t<decltype(impl)>;
            if constexpr (std::is_same_v<T, DecisionTreeModel>) {
                j["tree"] = tree_to_json(impl.tree);
            } else if constexpr (std::is_same_v<T, RandomForestModel>) {
                ordered_json trees = ordered_json::array();
                for (const Tree& t : impl.trees) {
                    trees.push_back(tree_to_json(t));
                }
                j["trees"] = std::move(trees);
            } else if constexpr (std::is_same_v<T, GbtModel>) {
                j["base_score"] = impl.base_score;
                j["learning_rate"] = impl.learning_rate;
                ordered_json trees = ordered_json::array();
                for (const Tree& t : impl.trees) {
                    trees.push_back(tree_to_json(t));
                }
                j["trees"] = std::move(trees);
            } else {
                j["k"] = impl.k;
                j["labels"] = impl.labels;
                j["train_x"] = features_to_json(impl.train_x);
            }
        },
        model.impl);
    return j;
}

TrainedModel model_from_json(const ordered_json& j) {
    TrainedModel model;
    model.kind = learner_kind_from_string(j.at("kind").get<std::string>());
    model.dim = j.at("dim").get<std::uint32_t>();
    model.vocab_fingerprint = j.at("vocab_fingerprint").get<std::uint64_t>();
    switch (model.kind) {
        case LearnerKind::decision_tree:
            model.impl = DecisionTreeModel{tree_from_json(j.at("tree"))};
            break;
        case LearnerKind::random_forest: {
            RandomForestModel rf;
            for (const auto& t : j.at("trees")) {
                rf.trees.push_back(tree_from_json(t));
            }
            model.impl = std::move(rf);
            break;
        }
        case LearnerKind::gradient_boosted_trees: {
            GbtModel gbt;
            gbt.base_score = j.at("base_score").get<double>();
            gbt.learning_rate = j.at("learning_rate").get<double>();
            for (const auto& t : j.at("trees")) {
                gbt.trees.push_back(tree_from_json(t));
            }
            model.impl = std::move(gbt);
            break;
        }
        case LearnerKind::knn: {
            KnnModel knn;
            knn.k = j.at("k").get<int>();
            knn.labels = j.at("labels").get<std::vector<int>>();
            knn.train_x = features_from_json(j.at("train_x"), model.dim);
            if (knn.labels.size() != knn.train_x.size()) {
                throw SchemaError("artifact knn labels/vectors mismatch");
            }
            model.impl = std::move(knn);
            break;
        }
    }
    return model;
}

}  // namespace

void save_ensemble(const TrainedEnsemble& ensemble,
                   const std::filesystem::path& path) {
    ensemble.validate();

    ordered_json payload;
    payload["vocab"] = {{"n_docs", ensemble.vocab.n_docs},
                        {"max_terms", ensemble.vocab.max_terms},
                        {"terms", ensemble.vocab.terms},
                        {"doc_freq", ensemble.vocab.doc_freq}};
    ordered_json models;
    for (const TrainedModel& m : ensemble.models) {
        models[std::string(to_string(m.kind))] = model_to_json(m);
    }
    payload["models"] = std::move(models);

    const std::string payload_str = payload.dump();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open model artifact for writing: " +
                      path.string());
    }
    out << "{\"format\":\"" << kArtifactFormat
        << "\",\"version\":" << kArtifactVersion << ",\"checksum\":\""
        << checksum_hex(payload_str) << "\",\"payload\":" << payload_str
        << "}\n";
    out.flush();
    if (!out) {
        throw IoError("write failure on model artifact: " + path.string());
    }
}

TrainedEnsemble load_ensemble(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open model artifact: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("read failure on model artifact: " + path.string());
    }

    ordered_json doc;
    try {
        doc = ordered_json::parse(buffer.str());
    } catch (const nlohmann::json::exception&) {
        throw SchemaError("model artifact is corrupt (checksum/parse failure): " +
                          path.string());
    }

    if (!doc.contains("format") || doc["format"] != kArtifactFormat) {
        throw SchemaError("not a model artifact: " + path.string());
    }
    if (!doc.contains("version") ||
        doc["version"].get<int>() != kArtifactVersion) {
        throw SchemaError(
            "unsupported artifact version " +
            (doc.contains("version") ? doc["version"].dump() : "<missing>") +
            " (expected " + std::to_string(kArtifactVersion) + ")");
    }
    const std::string payload_str = doc.at("payload").dump();
    if (doc.at("checksum").get<std::string>() != checksum_hex(payload_str)) {
        throw SchemaError("model artifact failed its checksum: " +
                          path.string());
    }

    const ordered_json& payload = doc["payload"];
    TrainedEnsemble ensemble;
    const ordered_json& vocab = payload.at("vocab");
    ensemble.vocab.n_docs = vocab.at("n_docs").get<std::uint32_t>();
    ensemble.vocab.max_terms = vocab.at("max_terms").get<std::uint32_t>();
    ensemble.vocab.terms = vocab.at("terms").get<std::vector<std::string>>();
    ensemble.vocab.doc_freq =
        vocab.at("doc_freq").get<std::vector<std::uint32_t>>();
    if (ensemble.vocab.terms.size() != ensemble.vocab.doc_freq.size()) {
        throw SchemaError("artifact vocabulary is inconsistent");
    }
    ensemble.vocab.rebuild_index();

    const ordered_json& models = payload.at("models");
    for (std::size_t i = 0; i < kLearnerOrder.size(); ++i) {
        const auto key = std::string(to_string(kLearnerOrder[i]));
        if (!models.contains(key)) {
            throw SchemaError("artifact is missing model '" + key + "'");
        }
        ensemble.models[i] = model_from_json(models[key]);
    }
    ensemble.validate();
    return ensemble;
}

}  // namespace scamdet
