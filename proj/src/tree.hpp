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

// Greedy CART builder shared by the decision-tree, random-forest and
// boosted-tree learners. Axis-aligned splits on a column-major dense
// matrix; Gini impurity for classification, squared error for the
// regression trees used by boosting. Everything is deterministic: feature
// scans run in index order, candidate values are sorted by (value, row)
// and equal-gain splits keep the first one found.

#pragma once

#include <cstdint>
#include <vector>

#include "scamdet/classifiers.hpp"
#include "scamdet/rng.hpp"

namespace scamdet::detail {

/// Column-major dense view of the training features.
struct ColumnMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // column-major: data[col * rows + row]

    double at(std::size_t row, std::size_t col) const {
        return data[col * rows + row];
    }
};

ColumnMatrix densify(const std::vector<FeatureVector>& x);

struct ClassificationTarget {
    const std::vector<int>* labels = nullptr;
    const std::vector<std::uint32_t>* weights = nullptr;  // bootstrap counts
};

struct RegressionTarget {
    const std::vector<double>* gradient = nullptr;  // per-sample residual
    const std::vector<double>* hessian = nullptr;   // curvature for leaf values
};

struct TreeBuildConfig {
    int max_depth = -1;  // -1 = unlimited
    int min_samples_split = 2;
    int features_per_split = -1;  // -1 = all features
};

Tree build_classification_tree(const ColumnMatrix& x,
                               const ClassificationTarget& target,
                               const TreeBuildConfig& config, Rng& rng);

Tree build_regression_tree(const ColumnMatrix& x,
                           const RegressionTarget& target,
                           const TreeBuildConfig& config);

/// Tree traversal over a row of the training matrix (used while boosting).
double predict_tree_row(const Tree& tree, const ColumnMatrix& x,
                        std::size_t row);

}  // namespace scamdet::detail
