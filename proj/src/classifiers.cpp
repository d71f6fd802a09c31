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

#include "scamdet/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "scamdet/errors.hpp"
#include "scamdet/kernels.hpp"
#include "scamdet/rng.hpp"
#include "tree.hpp"

namespace scamdet {

std::string_view to_string(LearnerKind kind) {
    switch (kind) {
        case LearnerKind::random_forest: return "random_forest";
        case LearnerKind::decision_tree: return "decision_tree";
        case LearnerKind::gradient_boosted_trees:
            return "gradient_boosted_trees";
        case LearnerKind::knn: return "knn";
    }
    return "unknown";
}

LearnerKind learner_kind_from_string(std::string_view s) {
    for (LearnerKind kind : kLearnerOrder) {
        if (s == to_string(kind)) {
            return kind;
        }
    }
    throw SchemaError("unknown learner kind '" + std::string(s) + "'");
}

void Hyperparams::validate() const {
    if (dt.min_samples_split < 2) {
        throw DataError("dt.min_samples_split must be >= 2");
    }
    if (rf.n_trees < 1) {
        throw DataError("rf.n_trees must be >= 1");
    }
    if (gbt.n_rounds < 0) {
        throw DataError("gbt.n_rounds must be >= 0");
    }
    if (gbt.max_depth < 1) {
        throw DataError("gbt.max_depth must be >= 1");
    }
    if (!(gbt.learning_rate > 0.0 && gbt.learning_rate <= 1.0)) {
        throw DataError("gbt.learning_rate must be in (0, 1]");
    }
    if (knn.k < 1 || knn.k % 2 == 0) {
        throw DataError("knn.k must be a positive odd number");
    }
}

double Tree::predict(const FeatureVector& x) const {
    std::int32_t node = 0;
    while (nodes[node].feature >= 0) {
        const TreeNode& n = nodes[node];
        node = x.at(static_cast<std::uint32_t>(n.feature)) <= n.threshold
                   ? n.left
                   : n.right;
    }
    return nodes[node].value;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void check_training_inputs(LearnerKind kind,
                           const std::vector<FeatureVector>& x,
                           const std::vector<int>& y) {
    if (x.empty()) {
        throw DataError("training set is empty");
    }
    if (x.size() != y.size()) {
        throw DataError("feature/label count mismatch");
    }
    if (x.size() < 2) {
        throw DataError("training requires at least 2 samples");
    }
    const std::uint32_t dim = x.front().dim;
    for (const FeatureVector& fv : x) {
        if (fv.dim != dim) {
            throw DataError("inconsistent feature dimensions in training set");
        }
    }
    if (kind != LearnerKind::knn) {
        const bool has_pos = std::find(y.begin(), y.end(), kScam) != y.end();
        const bool has_neg = std::find(y.begin(), y.end(), kNotScam) != y.end();
        if (!has_pos || !has_neg) {
            throw DataError(std::string(to_string(kind)) +
                            " requires both classes in the training set");
        }
    }
}

DecisionTreeModel train_decision_tree(const DtParams& params,
                                      const detail::ColumnMatrix& m,
                                      const std::vector<int>& y,
                                      std::uint64_t seed) {
    detail::TreeBuildConfig config;
    config.max_depth = params.max_depth;
    config.min_samples_split = params.min_samples_split;
    config.features_per_split = -1;
    detail::ClassificationTarget target;
    target.labels = &y;
    Rng rng(seed);  // a full feature set draws nothing from it
    return DecisionTreeModel{
        detail::build_classification_tree(m, target, config, rng)};
}

RandomForestModel train_random_forest(const RfParams& params,
                                      const detail::ColumnMatrix& m,
                                      const std::vector<int>& y,
                                      std::uint64_t seed) {
    RandomForestModel model;
    model.trees.reserve(static_cast<std::size_t>(params.n_trees));

    detail::TreeBuildConfig config;
    config.max_depth = params.max_depth;
    config.min_samples_split = 2;
    config.features_per_split =
        params.sqrt_features
            ? static_cast<int>(std::ceil(std::sqrt(static_cast<double>(m.cols))))
            : -1;

    for (int t = 0; t < params.n_trees; ++t) {
        Rng rng(derive_seed(seed, "rf-tree-" + std::to_string(t)));
        std::vector<std::uint32_t> weights(m.rows, 1u);
        if (params.bootstrap) {
            std::fill(weights.begin(), weights.end(), 0u);
            for (std::size_t i = 0; i < m.rows; ++i) {
                ++weights[rng.next_below(m.rows)];
            }
        }
        detail::ClassificationTarget target;
        target.labels = &y;
        target.weights = &weights;
        model.trees.push_back(
            detail::build_classification_tree(m, target, config, rng));
    }
    return model;
}

GbtModel train_gbt(const GbtParams& params, const detail::ColumnMatrix& m,
                   const std::vector<int>& y) {
    const auto n = m.rows;
    const auto positives = static_cast<double>(
        std::count(y.begin(), y.end(), kScam));
    const double negatives = static_cast<double>(n) - positives;

    GbtModel model;
    model.learning_rate = params.learning_rate;
    model.base_score = std::log(positives / negatives);

    std::vector<double> score(n, model.base_score);
    std::vector<double> gradient(n);
    std::vector<double> hessian(n);

    detail::TreeBuildConfig config;
    config.max_depth = params.max_depth;
    config.min_samples_split = 2;

    for (int round = 0; round < params.n_rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = sigmoid(score[i]);
            gradient[i] = static_cast<double>(y[i]) - p;
            hessian[i] = p * (1.0 - p);
        }
        detail::RegressionTarget target;
        target.gradient = &gradient;
        target.hessian = &hessian;
        Tree tree = detail::build_regression_tree(m, target, config);
        for (std::size_t i = 0; i < n; ++i) {
            score[i] +=
                params.learning_rate * detail::predict_tree_row(tree, m, i);
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

KnnModel train_knn(const KnnParams& params,
                   const std::vector<FeatureVector>& x,
                   const std::vector<int>& y) {
    if (static_cast<std::size_t>(params.k) > x.size()) {
        throw DataError("knn.k exceeds the number of training samples");
    }
    KnnModel model;
    model.k = params.k;
    model.train_x = x;
    model.labels = y;
    return model;
}

int predict_forest(const RandomForestModel& model, const FeatureVector& x) {
    std::size_t ones = 0;
    for (const Tree& tree : model.trees) {
        ones += tree.predict(x) >= 0.5 ? 1u : 0u;
    }
    // Exact ties (possible with an even tree count) resolve to not-scam.
    return 2 * ones > model.trees.size() ? kScam : kNotScam;
}

int predict_gbt(const GbtModel& model, const FeatureVector& x) {
    double score = model.base_score;
    for (const Tree& tree : model.trees) {
        score += model.learning_rate * tree.predict(x);
    }
    return sigmoid(score) > 0.5 ? kScam : kNotScam;
}

// Cosine distance against every stored vector; ties and degenerate
// zero-norm vectors are ordered by training index. Stored vectors are
// L2-normalized by vectorize(), so similarity is a dot product scaled by
// the query norm.
int predict_knn(const KnnModel& model, const FeatureVector& x) {
    constexpr double kUndefinedDistance = 2.0;  // > any 1 - cos for tf-idf

    const double query_sq =
        kernels::dot(x.values.data(), x.values.data(), x.values.size());
    const double query_norm = std::sqrt(query_sq);

    std::vector<double> dense;
    if (query_norm > 0.0) {
        dense.assign(x.dim, 0.0);
        for (std::size_t i = 0; i < x.nnz(); ++i) {
            dense[x.indices[i]] = x.values[i];
        }
    }

    const std::size_t n = model.train_x.size();
    std::vector<std::pair<double, std::size_t>> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        const FeatureVector& row = model.train_x[i];
        double distance = kUndefinedDistance;
        if (query_norm > 0.0 && row.nnz() > 0) {
            const double sim =
                kernels::gather_dot(row.indices.data(), row.values.data(),
                                    row.nnz(), dense.data()) /
                query_norm;
            distance = 1.0 - sim;
        }
        order[i] = {distance, i};
    }

    const auto k = static_cast<std::size_t>(model.k);
    std::partial_sort(order.begin(), order.begin() + static_cast<long>(k),
                      order.end());
    int ones = 0;
    for (std::size_t i = 0; i < k; ++i) {
        ones += model.labels[order[i].second];
    }
    return 2 * ones > model.k ? kScam : kNotScam;
}

}  // namespace

TrainedModel train(LearnerKind kind, const Hyperparams& hp,
                   const std::vector<FeatureVector>& x,
                   const std::vector<int>& y, std::uint64_t seed,
                   std::uint64_t vocab_fingerprint) {
    hp.validate();
    check_training_inputs(kind, x, y);

    TrainedModel model;
    model.kind = kind;
    model.dim = x.front().dim;
    model.vocab_fingerprint = vocab_fingerprint;

    switch (kind) {
        case LearnerKind::decision_tree: {
            const auto m = detail::densify(x);
            model.impl = train_decision_tree(hp.dt, m, y, seed);
            break;
        }
        case LearnerKind::random_forest: {
            const auto m = detail::densify(x);
            model.impl = train_random_forest(hp.rf, m, y, seed);
            break;
        }
        case LearnerKind::gradient_boosted_trees: {
            const auto m = detail::densify(x);
            model.impl = train_gbt(hp.gbt, m, y);
            break;
        }
        case LearnerKind::knn:
            model.impl = train_knn(hp.knn, x, y);
            break;
    }
    return model;
}

int predict(const TrainedModel& model, const FeatureVector& x) {
    if (x.dim != model.dim) {
        throw DataError("feature dimension " + std::to_string(x.dim) +
                        " does not match the fit-time dimension " +
                        std::to_string(model.dim));
    }
    return std::visit(
        [&x](const auto& impl) -> int {
            using T = std::decay_t<decltype(impl)>;
            if constexpr (std::is_same_v<T, DecisionTreeModel>) {
                return impl.tree.predict(x) >= 0.5 ? kScam : kNotScam;
            } else if constexpr (std::is_same_v<T, RandomForestModel>) {
                return predict_forest(impl, x);
            } else if constexpr (std::is_same_v<T, GbtModel>) {
                return predict_gbt(impl, x);
            } else {
                return predict_knn(impl, x);
            }
        },
        model.impl);
}

const TrainedModel& TrainedEnsemble::model(LearnerKind kind) const {
    for (const TrainedModel& m : models) {
        if (m.kind == kind) {
            return m;
        }
    }
    throw DataError("ensemble is missing learner " +
                    std::string(to_string(kind)));
}

void TrainedEnsemble::validate() const {
    const std::uint64_t expected = vocab.fingerprint();
    for (std::size_t i = 0; i < models.size(); ++i) {
        if (models[i].kind != kLearnerOrder[i]) {
            throw DataError("ensemble members out of order");
        }
        if (models[i].vocab_fingerprint != expected) {
            throw DataError(
                "vocabulary fingerprint mismatch for " +
                std::string(to_string(models[i].kind)) +
                "; the model was fitted against a different vocabulary");
        }
    }
}

std::array<int, 4> TrainedEnsemble::predict_votes(const FeatureVector& x) const {
    for (const TrainedModel& m : models) {
        if (m.vocab_fingerprint != models.front().vocab_fingerprint) {
            throw DataError("ensemble members disagree on their vocabulary "
                            "fingerprint");
        }
    }
    std::array<int, 4> votes{};
    for (std::size_t i = 0; i < models.size(); ++i) {
        votes[i] = predict(models[i], x);
    }
    return votes;
}

TrainedEnsemble train_ensemble(const Corpus& corpus,
                               const EnsembleTrainConfig& config) {
    config.hyperparams.validate();
    if (corpus.size() < 2) {
        throw DataError("ensemble training requires at least 2 messages");
    }

    TrainedEnsemble ensemble;
    ensemble.vocab = fit_vocabulary(corpus, config.max_terms);
    const std::uint64_t fingerprint = ensemble.vocab.fingerprint();

    std::vector<FeatureVector> x;
    std::vector<int> y;
    x.reserve(corpus.size());
    y.reserve(corpus.size());
    for (const Message& m : corpus.messages) {
        x.push_back(vectorize(ensemble.vocab, m.text));
        y.push_back(m.label);
    }

    const auto train_one = [&](LearnerKind kind) {
        return train(kind, config.hyperparams, x, y,
                     derive_seed(config.seed, to_string(kind)), fingerprint);
    };

    if (config.parallel) {
        std::array<std::future<TrainedModel>, 4> futures;
        for (std::size_t i = 0; i < kLearnerOrder.size(); ++i) {
            futures[i] = std::async(std::launch::async, train_one,
                                    kLearnerOrder[i]);
        }
        for (std::size_t i = 0; i < futures.size(); ++i) {
            ensemble.models[i] = futures[i].get();
        }
    } else {
        for (std::size_t i = 0; i < kLearnerOrder.size(); ++i) {
            ensemble.models[i] = train_one(kLearnerOrder[i]);
        }
    }
    ensemble.validate();
    return ensemble;
}

}  // namespace scamdet
