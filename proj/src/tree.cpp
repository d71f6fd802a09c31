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

#include "tree.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "scamdet/errors.hpp"

namespace scamdet::detail {

namespace {

// Guard against accidentally densifying a huge corpus; training is meant
// for desk-scale data, prediction stays sparse.
constexpr std::size_t kMaxDenseCells = 50'000'000;

struct SplitCandidate {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double gain = 0.0;
};

}  // namespace

ColumnMatrix densify(const std::vector<FeatureVector>& x) {
    ColumnMatrix m;
    m.rows = x.size();
    m.cols = x.empty() ? 0 : x.front().dim;
    if (m.rows * m.cols > kMaxDenseCells) {
        throw DataError(
            "training matrix exceeds the dense size limit; reduce max_terms "
            "or the corpus size");
    }
    m.data.assign(m.rows * m.cols, 0.0);
    for (std::size_t r = 0; r < x.size(); ++r) {
        const FeatureVector& fv = x[r];
        for (std::size_t k = 0; k < fv.nnz(); ++k) {
            m.data[static_cast<std::size_t>(fv.indices[k]) * m.rows + r] =
                fv.values[k];
        }
    }
    return m;
}

double predict_tree_row(const Tree& tree, const ColumnMatrix& x,
                        std::size_t row) {
    std::int32_t node = 0;
    while (tree.nodes[node].feature >= 0) {
        const TreeNode& n = tree.nodes[node];
        node = x.at(row, static_cast<std::size_t>(n.feature)) <= n.threshold
                   ? n.left
                   : n.right;
    }
    return tree.nodes[node].value;
}

namespace {

// Gathers (value, row) pairs for one feature over the node's rows, sorted
// by value then row so that sums and group boundaries are reproducible.
// Returns false for a constant column (no split possible there; with
// sparse text features most columns are all-zero below the root), in
// which case the sort is skipped.
bool gather_sorted(const ColumnMatrix& x, const std::vector<std::size_t>& rows,
                   std::size_t feature,
                   std::vector<std::pair<double, std::size_t>>& out) {
    out.clear();
    out.reserve(rows.size());
    bool constant = true;
    const double first = rows.empty() ? 0.0 : x.at(rows.front(), feature);
    for (const std::size_t r : rows) {
        const double value = x.at(r, feature);
        constant = constant && value == first;
        out.emplace_back(value, r);
    }
    if (constant) {
        return false;
    }
    std::sort(out.begin(), out.end());
    return true;
}

// Threshold between two consecutive distinct values. The midpoint can
// round onto the upper value; fall back to the lower value so
// `x <= threshold` always reproduces the left/right grouping seen here.
double split_threshold(double lo, double hi) {
    const double mid = lo + (hi - lo) * 0.5;
    return (mid > lo && mid < hi) ? mid : lo;
}

class ClassificationBuilder {
public:
    ClassificationBuilder(const ColumnMatrix& x,
                          const ClassificationTarget& target,
                          const TreeBuildConfig& config, Rng& rng)
        : x_(x), target_(target), config_(config), rng_(rng) {
        if (config_.features_per_split > 0 &&
            static_cast<std::size_t>(config_.features_per_split) < x_.cols) {
            feature_pool_.resize(x_.cols);
            for (std::size_t f = 0; f < x_.cols; ++f) {
                feature_pool_[f] = f;
            }
        }
    }

    Tree build() {
        Tree tree;
        std::vector<std::size_t> rows;
        for (std::size_t r = 0; r < x_.rows; ++r) {
            if (weight(r) > 0) {
                rows.push_back(r);
            }
        }
        tree.nodes.emplace_back();
        grow(tree, std::move(rows), 0, 0);
        return tree;
    }

private:
    std::uint32_t weight(std::size_t row) const {
        return target_.weights == nullptr ? 1u : (*target_.weights)[row];
    }

    // Weighted class counts over a node.
    std::array<double, 2> class_weights(const std::vector<std::size_t>& rows) const {
        std::array<double, 2> w{0.0, 0.0};
        for (const std::size_t r : rows) {
            w[static_cast<std::size_t>((*target_.labels)[r])] += weight(r);
        }
        return w;
    }

    static double gini(const std::array<double, 2>& w) {
        const double total = w[0] + w[1];
        if (total <= 0.0) {
            return 0.0;
        }
        const double p0 = w[0] / total;
        const double p1 = w[1] / total;
        return 1.0 - p0 * p0 - p1 * p1;
    }

    // Candidate features for one split; either every feature or a distinct
    // random subset drawn by partial Fisher-Yates.
    const std::vector<std::size_t>& candidate_features() {
        if (feature_pool_.empty()) {
            if (all_features_.empty()) {
                all_features_.resize(x_.cols);
                for (std::size_t f = 0; f < x_.cols; ++f) {
                    all_features_[f] = f;
                }
            }
            return all_features_;
        }
        const auto k = static_cast<std::size_t>(config_.features_per_split);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j =
                i + static_cast<std::size_t>(
                        rng_.next_below(feature_pool_.size() - i));
            std::swap(feature_pool_[i], feature_pool_[j]);
        }
        selected_.assign(feature_pool_.begin(),
                         feature_pool_.begin() + static_cast<long>(k));
        std::sort(selected_.begin(), selected_.end());
        return selected_;
    }

    SplitCandidate best_split(const std::vector<std::size_t>& rows,
                              const std::array<double, 2>& parent_w) {
        SplitCandidate best;
        const double parent_total = parent_w[0] + parent_w[1];
        const double parent_impurity = gini(parent_w);
        for (const std::size_t f : candidate_features()) {
            if (!gather_sorted(x_, rows, f, scratch_)) {
                continue;
            }
            std::array<double, 2> left{0.0, 0.0};
            for (std::size_t i = 0; i + 1 < scratch_.size(); ++i) {
                const auto [value, row] = scratch_[i];
                left[static_cast<std::size_t>((*target_.labels)[row])] +=
                    weight(row);
                if (value == scratch_[i + 1].first) {
                    continue;  // split only between distinct values
                }
                const std::array<double, 2> right{parent_w[0] - left[0],
                                                  parent_w[1] - left[1]};
                const double lw = left[0] + left[1];
                const double rw = right[0] + right[1];
                const double gain =
                    parent_impurity -
                    (lw * gini(left) + rw * gini(right)) / parent_total;
                if (gain > best.gain + 1e-12) {
                    best.found = true;
                    best.feature = f;
                    best.threshold =
                        split_threshold(value, scratch_[i + 1].first);
                    best.gain = gain;
                }
            }
        }
        return best;
    }

    void make_leaf(Tree& tree, std::int32_t node,
                   const std::array<double, 2>& w) {
        tree.nodes[node].feature = -1;
        // Majority class; exact ties resolve to not-scam.
        tree.nodes[node].value = w[1] > w[0] ? 1.0 : 0.0;
    }

    void grow(Tree& tree, std::vector<std::size_t> rows, int depth,
              std::int32_t node) {
        const std::array<double, 2> w = class_weights(rows);
        const double total_weight = w[0] + w[1];
        const bool pure = w[0] == 0.0 || w[1] == 0.0;
        const bool depth_capped =
            config_.max_depth >= 0 && depth >= config_.max_depth;
        if (pure || depth_capped ||
            total_weight < config_.min_samples_split) {
            make_leaf(tree, node, w);
            return;
        }
        const SplitCandidate split = best_split(rows, w);
        if (!split.found) {
            make_leaf(tree, node, w);
            return;
        }

        std::vector<std::size_t> left_rows;
        std::vector<std::size_t> right_rows;
        for (const std::size_t r : rows) {
            (x_.at(r, split.feature) <= split.threshold ? left_rows
                                                        : right_rows)
                .push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        tree.nodes[node].feature = static_cast<std::int32_t>(split.feature);
        tree.nodes[node].threshold = split.threshold;
        const auto left_index = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        tree.nodes[node].left = left_index;
        tree.nodes[node].right = left_index + 1;
        grow(tree, std::move(left_rows), depth + 1, left_index);
        grow(tree, std::move(right_rows), depth + 1, left_index + 1);
    }

    const ColumnMatrix& x_;
    const ClassificationTarget& target_;
    const TreeBuildConfig& config_;
    Rng& rng_;
    std::vector<std::size_t> feature_pool_;
    std::vector<std::size_t> all_features_;
    std::vector<std::size_t> selected_;
    std::vector<std::pair<double, std::size_t>> scratch_;
};

class RegressionBuilder {
public:
    RegressionBuilder(const ColumnMatrix& x, const RegressionTarget& target,
                      const TreeBuildConfig& config)
        : x_(x), target_(target), config_(config) {}

    Tree build() {
        Tree tree;
        std::vector<std::size_t> rows(x_.rows);
        for (std::size_t r = 0; r < x_.rows; ++r) {
            rows[r] = r;
        }
        tree.nodes.emplace_back();
        grow(tree, std::move(rows), 0, 0);
        return tree;
    }

private:
    double leaf_value(const std::vector<std::size_t>& rows) const {
        double grad_sum = 0.0;
        double hess_sum = 0.0;
        for (const std::size_t r : rows) {
            grad_sum += (*target_.gradient)[r];
            hess_sum += (*target_.hessian)[r];
        }
        if (hess_sum < 1e-6) {
            hess_sum = 1e-6;
        }
        return grad_sum / hess_sum;
    }

    // Least-squares gain on the gradient targets: maximizing
    // sumL^2/nL + sumR^2/nR is equivalent to minimizing the split SSE.
    SplitCandidate best_split(const std::vector<std::size_t>& rows) {
        SplitCandidate best;
        double total_sum = 0.0;
        for (const std::size_t r : rows) {
            total_sum += (*target_.gradient)[r];
        }
        const double n = static_cast<double>(rows.size());
        const double baseline = total_sum * total_sum / n;
        for (std::size_t f = 0; f < x_.cols; ++f) {
            if (!gather_sorted(x_, rows, f, scratch_)) {
                continue;
            }
            double left_sum = 0.0;
            for (std::size_t i = 0; i + 1 < scratch_.size(); ++i) {
                const auto [value, row] = scratch_[i];
                left_sum += (*target_.gradient)[row];
                if (value == scratch_[i + 1].first) {
                    continue;
                }
                const double nl = static_cast<double>(i + 1);
                const double nr = n - nl;
                const double right_sum = total_sum - left_sum;
                const double gain = left_sum * left_sum / nl +
                                    right_sum * right_sum / nr - baseline;
                if (gain > best.gain + 1e-12) {
                    best.found = true;
                    best.feature = f;
                    best.threshold =
                        split_threshold(value, scratch_[i + 1].first);
                    best.gain = gain;
                }
            }
        }
        return best;
    }

    void grow(Tree& tree, std::vector<std::size_t> rows, int depth,
              std::int32_t node) {
        const bool depth_capped =
            config_.max_depth >= 0 && depth >= config_.max_depth;
        if (depth_capped ||
            rows.size() < static_cast<std::size_t>(config_.min_samples_split)) {
            tree.nodes[node].feature = -1;
            tree.nodes[node].value = leaf_value(rows);
            return;
        }
        const SplitCandidate split = best_split(rows);
        if (!split.found) {
            tree.nodes[node].feature = -1;
            tree.nodes[node].value = leaf_value(rows);
            return;
        }

        std::vector<std::size_t> left_rows;
        std::vector<std::size_t> right_rows;
        for (const std::size_t r : rows) {
            (x_.at(r, split.feature) <= split.threshold ? left_rows
                                                        : right_rows)
                .push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        tree.nodes[node].feature = static_cast<std::int32_t>(split.feature);
        tree.nodes[node].threshold = split.threshold;
        const auto left_index = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        tree.nodes[node].left = left_index;
        tree.nodes[node].right = left_index + 1;
        grow(tree, std::move(left_rows), depth + 1, left_index);
        grow(tree, std::move(right_rows), depth + 1, left_index + 1);
    }

    const ColumnMatrix& x_;
    const RegressionTarget& target_;
    const TreeBuildConfig& config_;
    std::vector<std::pair<double, std::size_t>> scratch_;
};

}  // namespace

Tree build_classification_tree(const ColumnMatrix& x,
                               const ClassificationTarget& target,
                               const TreeBuildConfig& config, Rng& rng) {
    return ClassificationBuilder(x, target, config, rng).build();
}

Tree build_regression_tree(const ColumnMatrix& x,
                           const RegressionTarget& target,
                           const TreeBuildConfig& config) {
    return RegressionBuilder(x, target, config).build();
}

}  // namespace scamdet::detail
