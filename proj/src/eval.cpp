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

#include "scamdet/eval.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "scamdet/errors.hpp"

namespace scamdet {

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

}  // namespace

ConfusionMatrix confusion(std::span<const int> preds,
                          std::span<const int> truth) {
    if (preds.size() != truth.size()) {
        throw DataError("prediction/truth length mismatch: " +
                        std::to_string(preds.size()) + " vs " +
                        std::to_string(truth.size()));
    }
    if (preds.empty()) {
        throw DataError("confusion requires at least one prediction");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (truth[i] == kScam) {
            preds[i] == kScam ? ++cm.tp : ++cm.fn;
        } else {
            preds[i] == kScam ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) {
        throw DataError("metrics require a non-empty confusion matrix");
    }
    MetricsReport report;
    report.support_positive = cm.tp + cm.fn;
    report.support_negative = cm.fp + cm.tn;
    report.accuracy =
        static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    if (cm.tp + cm.fp > 0) {
        report.precision =
            static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    } else {
        // No predicted positives: vacuously perfect when there were no
        // actual positives to find, else 0.
        report.precision = cm.fn == 0 ? 1.0 : 0.0;
    }
    if (cm.tp + cm.fn > 0) {
        report.recall =
            static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    } else {
        report.recall = cm.fp == 0 ? 1.0 : 0.0;
    }
    const double pr = report.precision + report.recall;
    report.f1 = pr > 0.0 ? 2.0 * report.precision * report.recall / pr : 0.0;
    return report;
}

CategoryReport category_report(std::span<const RoutingTrace> traces,
                               const Corpus& truth) {
    if (traces.size() != truth.size()) {
        throw DataError("trace/corpus size mismatch");
    }
    CategoryReport report;
    for (Category c : kAllCategories) {
        report.per_category[c] = CategoryScore{};
    }
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const Message& m = truth.messages[i];
        if (traces[i].id != m.id) {
            throw DataError("trace id '" + traces[i].id +
                            "' does not align with corpus id '" + m.id +
                            "' at position " + std::to_string(i));
        }
        ConfusionMatrix& cm = report.per_category[m.category].cm;
        if (m.label == kScam) {
            traces[i].final_label == kScam ? ++cm.tp : ++cm.fn;
        } else {
            traces[i].final_label == kScam ? ++cm.fp : ++cm.tn;
        }
    }
    for (auto& [category, score] : report.per_category) {
        report.overall += score.cm;
        score.positive_support = score.cm.tp + score.cm.fn;
        if (score.cm.total() == 0) {
            continue;
        }
        const MetricsReport m = metrics(score.cm);
        if (score.positive_support > 0) {
            score.recall = m.recall;
            score.f1 = m.f1;
            score.precision = m.precision;
        }
    }
    return report;
}

std::string_view to_string(BenchMode mode) {
    switch (mode) {
        case BenchMode::hierarchical: return "hierarchical";
        case BenchMode::all_llm: return "all_llm";
    }
    return "hierarchical";
}

EfficiencyReport bench(const Corpus& corpus, const TrainedEnsemble& ensemble,
                       const Adjudicator& adjudicator, BenchMode mode,
                       int parallelism) {
    if (corpus.empty()) {
        throw DataError("bench requires a non-empty corpus");
    }

    EfficiencyReport report;
    report.mode = mode;
    report.n_messages = corpus.size();
    for (const Message& m : corpus.messages) {
        (m.label == kScam ? report.n_scam : report.n_not_scam) += 1;
        ++report.per_variant[m.variant];
    }

    const auto start = Clock::now();
    if (mode == BenchMode::hierarchical) {
        const std::vector<RoutingTrace> traces =
            classify_batch(corpus, ensemble, adjudicator, parallelism);
        report.total_s =
            std::chrono::duration<double>(Clock::now() - start).count();
        std::uint64_t escalated = 0;
        for (const RoutingTrace& t : traces) {
            escalated += t.escalated ? 1 : 0;
            report.stage_totals.ensemble_s += t.timings.ensemble_s;
            report.stage_totals.adjudicate_s += t.timings.adjudicate_s;
            report.stage_totals.fallback_s += t.timings.fallback_s;
        }
        report.escalation_fraction = static_cast<double>(escalated) /
                                     static_cast<double>(corpus.size());
    } else {
        for (const Message& m : corpus.messages) {
            const Adjudication a = adjudicator.adjudicate(m.text);
            report.stage_totals.adjudicate_s += a.latency_s;
        }
        report.total_s =
            std::chrono::duration<double>(Clock::now() - start).count();
        report.escalation_fraction = 1.0;
    }
    report.avg_per_message_s =
        report.total_s / static_cast<double>(corpus.size());
    return report;
}

namespace {

std::string fixed(double v, int digits = 4) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << v;
    return out.str();
}

std::string optional_fixed(const std::optional<double>& v, int digits = 4) {
    return v.has_value() ? fixed(*v, digits) : std::string("n/a");
}

void append_row(std::string& out, std::span<const std::string> cells,
                std::span<const std::size_t> widths) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out += cells[i];
        if (i + 1 < cells.size()) {
            out.append(widths[i] > cells[i].size()
                           ? widths[i] - cells[i].size() + 2
                           : 2,
                       ' ');
        }
    }
    out += '\n';
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size()) {
            widths.resize(row.size(), 0);
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    }
    std::string out;
    for (const auto& row : rows) {
        append_row(out, row, widths);
    }
    return out;
}

}  // namespace

std::string render_metrics_table(
    std::span<const std::pair<std::string, MetricsReport>> rows) {
    std::vector<std::vector<std::string>> table;
    table.push_back({"Method", "Accuracy", "Precision", "Recall", "F1"});
    for (const auto& [name, m] : rows) {
        table.push_back({name, fixed(m.accuracy, 2), fixed(m.precision, 2),
                         fixed(m.recall, 2), fixed(m.f1, 2)});
    }
    return render_table(table);
}

std::string render_category_table(const CategoryReport& report) {
    constexpr Category kScamTypes[] = {Category::romance, Category::recruitment,
                                       Category::finance, Category::pet,
                                       Category::lottery, Category::loan};
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> header{""};
    std::vector<std::string> recall_row{"Recall"};
    std::vector<std::string> f1_row{"F1 Score"};
    std::vector<std::string> precision_row{"Precision (ext)"};
    for (Category c : kScamTypes) {
        const CategoryScore& s = report.per_category.at(c);
        header.emplace_back(to_string(c));
        recall_row.push_back(optional_fixed(s.recall));
        f1_row.push_back(optional_fixed(s.f1));
        precision_row.push_back(optional_fixed(s.precision));
    }
    table.push_back(std::move(header));
    table.push_back(std::move(recall_row));
    table.push_back(std::move(f1_row));
    table.push_back(std::move(precision_row));
    return render_table(table);
}

std::string render_efficiency_table(std::span<const EfficiencyReport> rows) {
    std::vector<std::vector<std::string>> table;
    table.push_back({"Method", "Total Time (s)", "Avg. Time per Message (s)",
                     "Escalation Fraction"});
    for (const EfficiencyReport& r : rows) {
        table.push_back({std::string(to_string(r.mode)), fixed(r.total_s, 3),
                         fixed(r.avg_per_message_s, 4),
                         fixed(r.escalation_fraction, 3)});
    }
    if (rows.size() == 2) {
        const double hier =
            rows[0].mode == BenchMode::hierarchical ? rows[0].total_s
                                                    : rows[1].total_s;
        const double full = rows[0].mode == BenchMode::all_llm
                                ? rows[0].total_s
                                : rows[1].total_s;
        if (hier > 0.0) {
            table.push_back({"all_llm / hierarchical ratio", fixed(full / hier, 2),
                             "", ""});
        }
    }
    return render_table(table);
}

std::string metrics_to_json(const MetricsReport& report) {
    ordered_json j;
    j["accuracy"] = report.accuracy;
    j["precision"] = report.precision;
    j["recall"] = report.recall;
    j["f1"] = report.f1;
    j["support"] = {{"scam", report.support_positive},
                    {"not_scam", report.support_negative}};
    return j.dump(2);
}

std::string category_report_to_json(const CategoryReport& report) {
    ordered_json j;
    for (Category c : kAllCategories) {
        const CategoryScore& s = report.per_category.at(c);
        ordered_json entry;
        entry["support"] = s.positive_support;
        entry["recall"] = s.recall.has_value() ? ordered_json(*s.recall)
                                               : ordered_json(nullptr);
        entry["f1"] =
            s.f1.has_value() ? ordered_json(*s.f1) : ordered_json(nullptr);
        entry["precision"] = s.precision.has_value()
                                 ? ordered_json(*s.precision)
                                 : ordered_json(nullptr);
        entry["confusion"] = {{"tp", s.cm.tp},
                              {"fp", s.cm.fp},
                              {"fn", s.cm.fn},
                              {"tn", s.cm.tn}};
        j[std::string(to_string(c))] = std::move(entry);
    }
    return j.dump(2);
}

std::string efficiency_report_to_json(const EfficiencyReport& report) {
    ordered_json j;
    j["mode"] = std::string(to_string(report.mode));
    j["n_messages"] = report.n_messages;
    j["total_s"] = report.total_s;
    j["avg_per_message_s"] = report.avg_per_message_s;
    j["escalation_fraction"] = report.escalation_fraction;
    j["stage_totals"] = {{"ensemble_s", report.stage_totals.ensemble_s},
                         {"adjudicate_s", report.stage_totals.adjudicate_s},
                         {"fallback_s", report.stage_totals.fallback_s}};
    j["composition"] = {{"scam", report.n_scam},
                        {"not_scam", report.n_not_scam}};
    ordered_json variants;
    for (const auto& [variant, count] : report.per_variant) {
        variants[std::string(to_string(variant))] = count;
    }
    j["composition"]["variants"] = std::move(variants);
    return j.dump(2);
}

}  // namespace scamdet
