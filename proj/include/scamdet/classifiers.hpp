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
#include <string_view>
#include <variant>
#include <vector>

#include "scamdet/features.hpp"

namespace scamdet {

/// The four ensemble members, in the fixed voting order.
enum class LearnerKind {
    random_forest,
    decision_tree,
    gradient_boosted_trees,
    knn,
};

inline constexpr std::array<LearnerKind, 4> kLearnerOrder = {
    LearnerKind::random_forest,
    LearnerKind::decision_tree,
    LearnerKind::gradient_boosted_trees,
    LearnerKind::knn,
};

std::string_view to_string(LearnerKind kind);
LearnerKind learner_kind_from_string(std::string_view s);

struct DtParams {
    int max_depth = -1;  // -1 = unlimited
    int min_samples_split = 2;
    // criterion is Gini, splits axis-aligned, leaves majority-class
};

struct RfParams {
    int n_trees = 100;
    int max_depth = -1;
    bool bootstrap = true;
    bool sqrt_features = true;  // ceil(sqrt(d)) candidates per split
};

struct GbtParams {
    int n_rounds = 100;
    int max_depth = 4;
    double learning_rate = 0.1;
    // logistic loss; prediction thresholds sigmoid(score) at 0.5
};

struct KnnParams {
    int k = 5;  // must be odd; cosine metric
};

struct Hyperparams {
    DtParams dt;
    RfParams rf;
    GbtParams gbt;
    KnnParams knn;

    /// Throws DataError on invalid settings (even k, non-positive counts,
    /// learning rate outside (0, 1]).
    void validate() const;
};

/// Axis-aligned binary tree; rows route left when x[feature] <= threshold.
struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double value = 0.0;  // majority class (classification) or leaf score
};

struct Tree {
    std::vector<TreeNode> nodes;

    double predict(const FeatureVector& x) const;
};

struct DecisionTreeModel {
    Tree tree;
};

struct RandomForestModel {
    std::vector<Tree> trees;
};

struct GbtModel {
    double base_score = 0.0;
    double learning_rate = 0.1;
    std::vector<Tree> trees;
};

struct KnnModel {
    int k = 5;
    std::vector<FeatureVector> train_x;
    std::vector<int> labels;
};

struct TrainedModel {
    LearnerKind kind = LearnerKind::decision_tree;
    std::uint32_t dim = 0;
    std::uint64_t vocab_fingerprint = 0;
    std::variant<DecisionTreeModel, RandomForestModel, GbtModel, KnnModel> impl;
};

/// Fits one learner. Deterministic for fixed inputs and seed; tree and
/// boosting learners require both classes to be present.
TrainedModel train(LearnerKind kind, const Hyperparams& hp,
                   const std::vector<FeatureVector>& x,
                   const std::vector<int>& y, std::uint64_t seed,
                   std::uint64_t vocab_fingerprint);

/// Binary prediction; throws DataError on dimension mismatch.
int predict(const TrainedModel& model, const FeatureVector& x);

/// The four fitted ensemble members plus the vocabulary they share.
struct TrainedEnsemble {
    Vocabulary vocab;
    // Fixed order: random_forest, decision_tree, gradient_boosted_trees, knn.
    std::array<TrainedModel, 4> models;

    const TrainedModel& model(LearnerKind kind) const;

    /// Throws DataError unless all four fingerprints match the vocabulary.
    void validate() const;

    /// Votes in the fixed learner order, from a single featurization.
    std::array<int, 4> predict_votes(const FeatureVector& x) const;
};

struct EnsembleTrainConfig {
    Hyperparams hyperparams;
    std::uint32_t max_terms = kDefaultMaxTerms;
    std::uint64_t seed = 0;
    bool parallel = true;  // train the four learners on separate threads
};

TrainedEnsemble train_ensemble(const Corpus& corpus,
                               const EnsembleTrainConfig& config);

/// Artifact container: versioned JSON with a whole-file checksum.
void save_ensemble(const TrainedEnsemble& ensemble,
                   const std::filesystem::path& path);
TrainedEnsemble load_ensemble(const std::filesystem::path& path);

}  // namespace scamdet
