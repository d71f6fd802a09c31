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

#include "scamdet/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "scamdet/adjudicator.hpp"
#include "scamdet/augment.hpp"
#include "scamdet/errors.hpp"
#include "scamdet/eval.hpp"
#include "scamdet/voting.hpp"

namespace scamdet::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string env_or(const char* name, std::string fallback) {
    const char* v = std::getenv(name);
    return (v == nullptr || *v == '\0') ? fallback : std::string(v);
}

// Precedence for the retry count: flag > environment > config file > 2.
int resolve_retries(const AdjudicatorOptions& options,
                    std::optional<int> from_file = std::nullopt) {
    if (options.retries.has_value()) {
        return *options.retries;
    }
    if (const char* v = std::getenv("SCAMDET_BACKEND_RETRIES")) {
        try {
            return std::stoi(v);
        } catch (const std::exception&) {
            throw UsageError("SCAMDET_BACKEND_RETRIES is not an integer");
        }
    }
    return from_file.value_or(2);
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("write failure: " + path.string());
    }
}

// Every run records the fully resolved configuration (defaults plus
// overrides) next to its outputs, or on stdout when there is no output
// file.
void log_resolved_config(const std::string& out_path,
                         const ordered_json& config) {
    if (out_path.empty()) {
        std::cout << "resolved-config: " << config.dump() << "\n";
    } else {
        write_text_file(out_path, config.dump(2) + "\n");
    }
}

HttpBackendConfig resolve_http_config(const AdjudicatorOptions& options) {
    // Precedence: config file < environment < flags.
    HttpBackendConfig config;
    if (!options.backend_config_file.empty()) {
        config = HttpBackendConfig::from_file(options.backend_config_file);
    }
    config.base_url = env_or("SCAMDET_BACKEND_URL", config.base_url);
    config.model = env_or("SCAMDET_BACKEND_MODEL", config.model);
    if (const char* t = std::getenv("SCAMDET_BACKEND_TIMEOUT_S")) {
        try {
            config.timeout_s = std::stod(t);
        } catch (const std::exception&) {
            throw UsageError("SCAMDET_BACKEND_TIMEOUT_S is not a number");
        }
    }
    if (const char* v = std::getenv("SCAMDET_BACKEND_INFLIGHT")) {
        try {
            config.max_inflight = std::stoi(v);
        } catch (const std::exception&) {
            throw UsageError("SCAMDET_BACKEND_INFLIGHT is not an integer");
        }
    }
    if (!options.backend_url.empty()) {
        config.base_url = options.backend_url;
    }
    if (!options.model.empty()) {
        config.model = options.model;
    }
    if (options.timeout_s.has_value()) {
        config.timeout_s = *options.timeout_s;
    }
    if (options.max_inflight.has_value()) {
        config.max_inflight = *options.max_inflight;
    }
    return config;
}

ordered_json adjudicator_config_json(const AdjudicatorOptions& options) {
    ordered_json j;
    j["kind"] = options.kind;
    if (options.kind == "http") {
        const HttpBackendConfig config = resolve_http_config(options);
        j["backend_url"] = config.base_url;
        j["backend_config_file"] = options.backend_config_file;
        j["model"] = config.model;
        j["timeout_s"] = config.timeout_s;
        j["retries"] = resolve_retries(options, config.retries);
        j["max_inflight"] = config.max_inflight;
    } else if (options.kind == "stub") {
        j["stub_script_file"] = options.stub_script_file;
        j["stub_default"] = options.stub_default;
        j["stub_delay_ms"] = options.stub_delay_ms;
        j["retries"] = resolve_retries(options);
    }
    return j;
}

std::shared_ptr<Backend> make_stub_backend(const AdjudicatorOptions& options) {
    auto delay = std::chrono::milliseconds(options.stub_delay_ms);
    if (options.stub_script_file.empty()) {
        auto stub = StubBackend::mapped({}, options.stub_default);
        stub->set_delay(delay);
        return stub;
    }

    std::ifstream in(options.stub_script_file);
    if (!in) {
        throw IoError("cannot open stub script: " + options.stub_script_file);
    }
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("stub script is not valid JSON: " +
                          std::string(e.what()));
    }
    if (j.contains("delay_ms")) {
        delay = std::chrono::milliseconds(j["delay_ms"].get<int>());
    }

    std::shared_ptr<StubBackend> stub;
    if (j.contains("script")) {
        std::vector<StubBackend::Reply> replies;
        for (const auto& entry : j["script"]) {
            if (entry.is_null()) {
                replies.push_back(std::nullopt);
            } else {
                replies.push_back(entry.get<std::string>());
            }
        }
        stub = StubBackend::scripted(std::move(replies));
    } else {
        std::map<std::string, std::string> by_text;
        if (j.contains("map")) {
            for (const auto& [key, value] : j["map"].items()) {
                by_text[key] = value.get<std::string>();
            }
        }
        stub = StubBackend::mapped(
            std::move(by_text),
            j.value("default", options.stub_default));
    }
    stub->set_delay(delay);
    return stub;
}

Adjudicator make_adjudicator(const AdjudicatorOptions& options) {
    RetryPolicy retry;
    retry.max_retries = resolve_retries(options);

    std::shared_ptr<Backend> backend;
    if (options.kind == "none") {
        backend = std::make_shared<NullBackend>();
        retry.max_retries = 0;
    } else if (options.kind == "stub") {
        backend = make_stub_backend(options);
        retry.initial_backoff = std::chrono::milliseconds(1);
    } else if (options.kind == "http") {
        HttpBackendConfig config = resolve_http_config(options);
        retry.max_retries = resolve_retries(options, config.retries);
        backend = std::make_shared<HttpBackend>(std::move(config));
    } else {
        throw UsageError("unknown adjudicator kind '" + options.kind +
                         "' (expected http, stub or none)");
    }
    return Adjudicator(std::move(backend), DecodingConfig{}, retry);
}

std::string format_with_separators(std::uint64_t value) {
    std::string digits = std::to_string(value);
    std::string out;
    const std::size_t first = digits.size() % 3 == 0 ? 3 : digits.size() % 3;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i != 0 && (i - first) % 3 == 0 && i >= first) {
            out.push_back(',');
        }
        out.push_back(digits[i]);
    }
    return out;
}

}  // namespace

void cmd_train(const TrainOptions& options) {
    const Corpus corpus = load_corpus(options.corpus_path);

    EnsembleTrainConfig config;
    config.hyperparams = options.hyperparams;
    config.max_terms = options.max_terms;
    config.seed = options.seed;
    config.parallel = options.parallel;
    const TrainedEnsemble ensemble = train_ensemble(corpus, config);

    save_ensemble(ensemble, options.out_path);

    // Training accuracy per model, on the corpus the ensemble was fit on.
    std::vector<FeatureVector> x;
    x.reserve(corpus.size());
    for (const Message& m : corpus.messages) {
        x.push_back(vectorize(ensemble.vocab, m.text));
    }
    std::cout << "trained on " << corpus.size() << " messages, vocabulary "
              << ensemble.vocab.size() << " terms\n";
    for (const TrainedModel& model : ensemble.models) {
        std::size_t correct = 0;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (predict(model, x[i]) == corpus.messages[i].label) {
                ++correct;
            }
        }
        std::cout << to_string(model.kind) << " training accuracy: "
                  << static_cast<double>(correct) /
                         static_cast<double>(corpus.size())
                  << "\n";
    }
    std::cout << "artifact written to " << options.out_path << "\n";

    ordered_json config_log;
    config_log["command"] = "train";
    config_log["corpus"] = options.corpus_path;
    config_log["out"] = options.out_path;
    config_log["seed"] = options.seed;
    config_log["max_terms"] = options.max_terms;
    config_log["parallel"] = options.parallel;
    config_log["hyperparams"] = {
        {"dt",
         {{"max_depth", options.hyperparams.dt.max_depth},
          {"min_samples_split", options.hyperparams.dt.min_samples_split}}},
        {"rf",
         {{"n_trees", options.hyperparams.rf.n_trees},
          {"max_depth", options.hyperparams.rf.max_depth},
          {"bootstrap", options.hyperparams.rf.bootstrap},
          {"sqrt_features", options.hyperparams.rf.sqrt_features}}},
        {"gbt",
         {{"n_rounds", options.hyperparams.gbt.n_rounds},
          {"max_depth", options.hyperparams.gbt.max_depth},
          {"learning_rate", options.hyperparams.gbt.learning_rate}}},
        {"knn", {{"k", options.hyperparams.knn.k}}}};
    log_resolved_config(options.out_path + ".run.json", config_log);
}

void cmd_classify(const ClassifyOptions& options) {
    if (options.corpus_path.empty() == options.text.empty()) {
        throw UsageError("classify needs exactly one of --corpus or --text");
    }
    const TrainedEnsemble ensemble = load_ensemble(options.model_path);
    const Adjudicator adjudicator = make_adjudicator(options.adjudicator);

    ordered_json config_log;
    config_log["command"] = "classify";
    config_log["model"] = options.model_path;
    config_log["corpus"] = options.corpus_path;
    config_log["text_mode"] = !options.text.empty();
    config_log["adjudicator"] = adjudicator_config_json(options.adjudicator);
    config_log["parallelism"] = options.parallelism;
    config_log["out"] = options.out_path;

    if (!options.text.empty()) {
        const RoutingTrace trace =
            classify_hierarchical(options.text, ensemble, adjudicator);
        std::cout << (trace.final_label == kScam ? "scam" : "not_scam")
                  << "\n";
        const std::string line = trace.to_json_line() + "\n";
        if (!options.out_path.empty()) {
            write_text_file(options.out_path, line);
            log_resolved_config(options.out_path + ".run.json", config_log);
        } else {
            std::cout << line;
        }
        return;
    }

    const Corpus corpus = load_corpus(options.corpus_path);
    const std::vector<RoutingTrace> traces =
        classify_batch(corpus, ensemble, adjudicator, options.parallelism);

    std::string lines;
    for (const RoutingTrace& trace : traces) {
        lines += trace.to_json_line();
        lines += '\n';
    }
    if (options.out_path.empty()) {
        std::cout << lines;
    } else {
        write_text_file(options.out_path, lines);
        log_resolved_config(options.out_path + ".run.json", config_log);
        std::cout << "wrote " << traces.size() << " traces to "
                  << options.out_path << "\n";
    }
}

void cmd_evaluate(const EvaluateOptions& options) {
    const TrainedEnsemble ensemble = load_ensemble(options.model_path);
    const Adjudicator adjudicator = make_adjudicator(options.adjudicator);
    const Corpus corpus = load_corpus(options.corpus_path);
    if (corpus.empty()) {
        throw DataError("evaluation corpus is empty");
    }

    const std::vector<RoutingTrace> traces =
        classify_batch(corpus, ensemble, adjudicator, options.parallelism);

    std::vector<int> truth;
    std::vector<int> hierarchical_preds;
    std::vector<int> weighted_preds;
    truth.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        truth.push_back(corpus.messages[i].label);
        hierarchical_preds.push_back(traces[i].final_label);
        weighted_preds.push_back(
            weighted_vote(traces[i].votes, VotingWeights{}));
    }

    // Two aggregation rows side by side: the full hierarchical route
    // (majority-based fallback) and pure weighted voting over the same
    // four votes.
    const MetricsReport hierarchical_metrics =
        metrics(confusion(hierarchical_preds, truth));
    const MetricsReport weighted_metrics =
        metrics(confusion(weighted_preds, truth));
    const CategoryReport categories = category_report(traces, corpus);

    const std::vector<std::pair<std::string, MetricsReport>> rows = {
        {"hierarchical_majority", hierarchical_metrics},
        {"weighted_vote", weighted_metrics},
    };
    const std::string metrics_table = render_metrics_table(rows);
    const std::string category_table = render_category_table(categories);
    std::cout << metrics_table << "\n" << category_table;

    if (!options.out_dir.empty()) {
        const std::filesystem::path dir(options.out_dir);
        std::filesystem::create_directories(dir);
        ordered_json metrics_json;
        metrics_json["hierarchical_majority"] =
            ordered_json::parse(metrics_to_json(hierarchical_metrics));
        metrics_json["weighted_vote"] =
            ordered_json::parse(metrics_to_json(weighted_metrics));
        write_text_file(dir / "metrics.json", metrics_json.dump(2) + "\n");
        write_text_file(dir / "metrics.txt", metrics_table);
        write_text_file(dir / "categories.json",
                        category_report_to_json(categories) + "\n");
        write_text_file(dir / "categories.txt", category_table);
        std::string trace_lines;
        for (const RoutingTrace& trace : traces) {
            trace_lines += trace.to_json_line();
            trace_lines += '\n';
        }
        write_text_file(dir / "traces.jsonl", trace_lines);
    }

    ordered_json config_log;
    config_log["command"] = "evaluate";
    config_log["model"] = options.model_path;
    config_log["corpus"] = options.corpus_path;
    config_log["adjudicator"] = adjudicator_config_json(options.adjudicator);
    config_log["parallelism"] = options.parallelism;
    config_log["out_dir"] = options.out_dir;
    log_resolved_config(options.out_dir.empty()
                            ? std::string()
                            : (std::filesystem::path(options.out_dir) /
                               "run.json")
                                  .string(),
                        config_log);
}

void cmd_augment(const AugmentOptions& options) {
    const Corpus corpus = load_corpus(options.corpus_path);

    std::vector<Transform> transforms;
    for (const std::string& name : options.transforms) {
        transforms.push_back(transform_from_string(name));
    }
    if (transforms.empty()) {
        throw UsageError("augment requires at least one --transform");
    }

    SynonymLexicon lexicon;
    const bool needs_lexicon =
        std::find(transforms.begin(), transforms.end(),
                  Transform::synonym_replace) != transforms.end();
    if (!options.lexicon_path.empty()) {
        lexicon = SynonymLexicon::load(options.lexicon_path);
    } else if (needs_lexicon) {
        throw UsageError("synonym_replace requires --lexicon");
    }

    AugmentConfig config;
    config.seed = options.seed;
    config.p_delete = options.p_delete;
    config.p_synonym = options.p_synonym;

    const Corpus augmented = augment_corpus(corpus, lexicon, config,
                                            transforms, options.keep_originals);
    save_corpus(augmented, options.out_path);
    std::cout << "augmented " << corpus.size() << " -> " << augmented.size()
              << " messages (" << options.out_path << ")\n";

    ordered_json config_log;
    config_log["command"] = "augment";
    config_log["corpus"] = options.corpus_path;
    config_log["lexicon"] = options.lexicon_path;
    config_log["out"] = options.out_path;
    config_log["seed"] = options.seed;
    config_log["transforms"] = options.transforms;
    config_log["keep_originals"] = options.keep_originals;
    config_log["p_delete"] = options.p_delete;
    config_log["p_synonym"] = options.p_synonym;
    log_resolved_config(options.out_path + ".run.json", config_log);
}

void cmd_bench(const BenchOptions& options) {
    const TrainedEnsemble ensemble = load_ensemble(options.model_path);
    const Adjudicator adjudicator = make_adjudicator(options.adjudicator);
    const Corpus corpus = load_corpus(options.corpus_path);

    std::vector<EfficiencyReport> reports;
    if (options.mode == "both" || options.mode == "hierarchical") {
        reports.push_back(bench(corpus, ensemble, adjudicator,
                                BenchMode::hierarchical, options.parallelism));
    }
    if (options.mode == "both" || options.mode == "all_llm") {
        reports.push_back(bench(corpus, ensemble, adjudicator,
                                BenchMode::all_llm, options.parallelism));
    }
    if (reports.empty()) {
        throw UsageError("unknown bench mode '" + options.mode +
                         "' (expected both, hierarchical or all_llm)");
    }
    std::cout << render_efficiency_table(reports);

    ordered_json config_log;
    config_log["command"] = "bench";
    config_log["model"] = options.model_path;
    config_log["corpus"] = options.corpus_path;
    config_log["adjudicator"] = adjudicator_config_json(options.adjudicator);
    config_log["mode"] = options.mode;
    config_log["parallelism"] = options.parallelism;
    config_log["out"] = options.out_path;

    if (!options.out_path.empty()) {
        ordered_json out;
        out["rows"] = ordered_json::array();
        for (const EfficiencyReport& report : reports) {
            out["rows"].push_back(
                ordered_json::parse(efficiency_report_to_json(report)));
        }
        if (reports.size() == 2 && reports.front().total_s > 0.0) {
            out["all_llm_over_hierarchical"] =
                reports.back().total_s / reports.front().total_s;
        }
        write_text_file(options.out_path, out.dump(2) + "\n");
        log_resolved_config(options.out_path + ".run.json", config_log);
    } else {
        log_resolved_config("", config_log);
    }
}

void cmd_budget(const BudgetOptions& options) {
    const std::uint64_t trainable =
        lora_trainable_params(options.hidden_size, options.rank,
                              options.layers, options.target_modules);
    const double fraction =
        lora_trainable_fraction(trainable, options.total_params);
    std::cout << "trainable parameters: " << format_with_separators(trainable)
              << "\n"
              << "total parameters:     "
              << format_with_separators(options.total_params) << "\n"
              << "trainable fraction:   " << std::fixed << std::setprecision(1)
              << fraction * 100.0 << "%\n";
    std::cout.unsetf(std::ios::fixed);
    std::cout.precision(6);

    ordered_json config_log;
    config_log["command"] = "budget";
    config_log["hidden_size"] = options.hidden_size;
    config_log["rank"] = options.rank;
    config_log["layers"] = options.layers;
    config_log["target_modules"] = options.target_modules;
    config_log["total"] = options.total_params;
    log_resolved_config("", config_log);
}

int run(int argc, const char* const* argv) {
    CLI::App app{"hierarchical scam-detection pipeline"};
    app.require_subcommand(1);

    TrainOptions train_options;
    ClassifyOptions classify_options;
    EvaluateOptions evaluate_options;
    AugmentOptions augment_options;
    BenchOptions bench_options;
    BudgetOptions budget_options;

    const auto add_adjudicator_flags = [](CLI::App* cmd,
                                          AdjudicatorOptions& options) {
        cmd->add_option("--adjudicator", options.kind,
                        "escalation backend: http, stub or none")
            ->check(CLI::IsMember({"http", "stub", "none"}));
        cmd->add_option("--backend-url", options.backend_url,
                        "chat-completions base URL (http backend)");
        cmd->add_option("--backend-config", options.backend_config_file,
                        "backend JSON config file");
        cmd->add_option("--backend-model", options.model,
                        "model name sent in requests");
        cmd->add_option("--backend-timeout", options.timeout_s,
                        "request timeout in seconds");
        cmd->add_option("--backend-retries", options.retries,
                        "transport retries before degrading to uncertain");
        cmd->add_option("--backend-inflight", options.max_inflight,
                        "max concurrent requests");
        cmd->add_option("--stub-script", options.stub_script_file,
                        "stub response script (JSON)");
        cmd->add_option("--stub-default", options.stub_default,
                        "stub reply for unmapped messages");
        cmd->add_option("--stub-delay-ms", options.stub_delay_ms,
                        "injected stub latency per call");
    };

    CLI::App* train = app.add_subcommand(
        "train", "fit the vocabulary and the four-model ensemble");
    train->add_option("--corpus", train_options.corpus_path, "training corpus (JSONL)")
        ->required();
    train->add_option("--out", train_options.out_path, "model artifact path")
        ->required();
    train->add_option("--seed", train_options.seed, "master random seed");
    train->add_option("--max-terms", train_options.max_terms,
                      "vocabulary size cap");
    train->add_flag("!--serial", train_options.parallel,
                    "train the four learners sequentially");
    train->add_option("--dt-max-depth", train_options.hyperparams.dt.max_depth);
    train->add_option("--dt-min-split",
                      train_options.hyperparams.dt.min_samples_split);
    train->add_option("--rf-trees", train_options.hyperparams.rf.n_trees);
    train->add_option("--rf-max-depth", train_options.hyperparams.rf.max_depth);
    train->add_flag("!--rf-no-bootstrap",
                    train_options.hyperparams.rf.bootstrap);
    train->add_flag("!--rf-all-features",
                    train_options.hyperparams.rf.sqrt_features);
    train->add_option("--gbt-rounds", train_options.hyperparams.gbt.n_rounds);
    train->add_option("--gbt-max-depth",
                      train_options.hyperparams.gbt.max_depth);
    train->add_option("--gbt-learning-rate",
                      train_options.hyperparams.gbt.learning_rate);
    train->add_option("--knn-k", train_options.hyperparams.knn.k);

    CLI::App* classify = app.add_subcommand(
        "classify", "route messages through the hierarchical pipeline");
    classify->add_option("--model", classify_options.model_path)->required();
    classify->add_option("--corpus", classify_options.corpus_path,
                         "corpus of messages to classify");
    classify->add_option("--text", classify_options.text,
                         "classify a single message");
    classify->add_option("--out", classify_options.out_path,
                         "trace JSONL output path");
    classify->add_option("--parallelism", classify_options.parallelism);
    add_adjudicator_flags(classify, classify_options.adjudicator);

    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "classify a labeled corpus and report metrics");
    evaluate->add_option("--model", evaluate_options.model_path)->required();
    evaluate->add_option("--corpus", evaluate_options.corpus_path)->required();
    evaluate->add_option("--out", evaluate_options.out_dir,
                         "report output directory");
    evaluate->add_option("--parallelism", evaluate_options.parallelism);
    add_adjudicator_flags(evaluate, evaluate_options.adjudicator);

    CLI::App* augment = app.add_subcommand(
        "augment", "expand a corpus with bounded text transformations");
    augment->add_option("--corpus", augment_options.corpus_path)->required();
    augment->add_option("--lexicon", augment_options.lexicon_path,
                        "synonym lexicon (lemma<TAB>syn1,syn2,...)");
    augment->add_option("--out", augment_options.out_path)->required();
    augment->add_option("--seed", augment_options.seed);
    augment
        ->add_option("--transform", augment_options.transforms,
                     "synonym_replace, random_delete, shuffle_sentences "
                     "(repeatable, ordered)")
        ->required();
    augment->add_flag("!--drop-originals", augment_options.keep_originals);
    augment->add_option("--p-delete", augment_options.p_delete);
    augment->add_option("--p-synonym", augment_options.p_synonym);

    CLI::App* bench_cmd = app.add_subcommand(
        "bench", "time hierarchical routing against all-LLM adjudication");
    bench_cmd->add_option("--model", bench_options.model_path)->required();
    bench_cmd->add_option("--corpus", bench_options.corpus_path)->required();
    bench_cmd->add_option("--mode", bench_options.mode,
                          "both, hierarchical or all_llm");
    bench_cmd->add_option("--out", bench_options.out_path,
                          "JSON report output path");
    bench_cmd->add_option("--parallelism", bench_options.parallelism);
    add_adjudicator_flags(bench_cmd, bench_options.adjudicator);

    CLI::App* budget = app.add_subcommand(
        "budget", "adapter fine-tuning trainable-parameter budget");
    budget->add_option("hidden_size", budget_options.hidden_size)->required();
    budget->add_option("rank", budget_options.rank)->required();
    budget->add_option("layers", budget_options.layers)->required();
    budget->add_option("target_modules", budget_options.target_modules)
        ->required();
    budget->add_option("--total", budget_options.total_params,
                       "total parameter count for the fraction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (train->parsed()) {
            cmd_train(train_options);
        } else if (classify->parsed()) {
            cmd_classify(classify_options);
        } else if (evaluate->parsed()) {
            cmd_evaluate(evaluate_options);
        } else if (augment->parsed()) {
            cmd_augment(augment_options);
        } else if (bench_cmd->parsed()) {
            cmd_bench(bench_options);
        } else if (budget->parsed()) {
            cmd_budget(budget_options);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BackendError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBackend;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

}  // namespace scamdet::cli
