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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scamdet/corpus.hpp"
#include "scamdet/voting.hpp"

namespace scamdet {

/// Binary confusion counts; scam is the positive class.
struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const { return tp + fp + fn + tn; }

    ConfusionMatrix& operator+=(const ConfusionMatrix& other) {
        tp += other.tp;
        fp += other.fp;
        fn += other.fn;
        tn += other.tn;
        return *this;
    }
    bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(std::span<const int> preds,
                          std::span<const int> truth);

/// Accuracy, precision, recall and F1 with explicit degenerate-case
/// conventions: with no predicted positives, precision is 1 if there were
/// also no actual positives (vacuous) and 0 otherwise; recall mirrors
/// that for no actual positives; F1 is 0 when precision + recall is 0.
struct MetricsReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::uint64_t support_positive = 0;
    std::uint64_t support_negative = 0;
};

MetricsReport metrics(const ConfusionMatrix& cm);

/// Per-scam-type scores. Categories with zero positive support report
/// n/a (nullopt), never 0. Precision is included as an extension beyond
/// the recall/F1 pair.
struct CategoryScore {
    ConfusionMatrix cm;
    std::uint64_t positive_support = 0;
    std::optional<double> recall;
    std::optional<double> f1;
    std::optional<double> precision;
};

struct CategoryReport {
    // Keyed by every category (including `other`) so the per-category
    // confusions sum to the global matrix; the rendered table shows the
    // six scam types.
    std::map<Category, CategoryScore> per_category;
    ConfusionMatrix overall;
};

/// Traces must align with the corpus one-to-one by id (same order).
CategoryReport category_report(std::span<const RoutingTrace> traces,
                               const Corpus& truth);

enum class BenchMode {
    hierarchical,
    all_llm,
};

std::string_view to_string(BenchMode mode);

/// Wall-clock cost profile for one routing mode over a corpus; also
/// reports the class composition of the corpus instead of assuming one.
struct EfficiencyReport {
    BenchMode mode = BenchMode::hierarchical;
    std::uint64_t n_messages = 0;
    double total_s = 0.0;
    double avg_per_message_s = 0.0;
    double escalation_fraction = 0.0;  // 1.0 in all-LLM mode
    StageTimings stage_totals;
    // corpus composition
    std::uint64_t n_scam = 0;
    std::uint64_t n_not_scam = 0;
    std::map<Variant, std::uint64_t> per_variant;
};

/// Times one full pass over the corpus with a monotonic clock.
/// hierarchical routes through the ensemble with escalation; all_llm
/// sends every message to the adjudicator.
EfficiencyReport bench(const Corpus& corpus, const TrainedEnsemble& ensemble,
                       const Adjudicator& adjudicator, BenchMode mode,
                       int parallelism = 1);

// Plain-text tables matching the usual report layouts.
std::string render_metrics_table(
    std::span<const std::pair<std::string, MetricsReport>> rows);
std::string render_category_table(const CategoryReport& report);
std::string render_efficiency_table(std::span<const EfficiencyReport> rows);

// JSON forms for files and logs.
std::string metrics_to_json(const MetricsReport& report);
std::string category_report_to_json(const CategoryReport& report);
std::string efficiency_report_to_json(const EfficiencyReport& report);

}  // namespace scamdet
