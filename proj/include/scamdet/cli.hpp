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
#include <optional>
#include <string>
#include <vector>

#include "scamdet/classifiers.hpp"

namespace scamdet::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitBackend = 3;

/// Adjudicator selection shared by classify, evaluate and bench.
/// kind "http" talks to a chat-completions endpoint, "stub" replays a
/// scripted response file, "none" forces every escalation down the
/// fallback ladder (no network anywhere).
struct AdjudicatorOptions {
    std::string kind = "none";  // http | stub | none
    // http
    std::string backend_url;          // flag; wins over environment
    std::string backend_config_file;  // JSON config file (lowest precedence)
    std::string model;
    std::optional<double> timeout_s;
    std::optional<int> retries;  // flag > SCAMDET_BACKEND_RETRIES > 2
    std::optional<int> max_inflight;
    // stub
    std::string stub_script_file;  // JSON: {"default": str, "map": {...},
                                   //        "script": [str|null, ...],
                                   //        "delay_ms": int}
    std::string stub_default = "yes";
    int stub_delay_ms = 0;
};

struct TrainOptions {
    std::string corpus_path;
    std::string out_path;
    std::uint64_t seed = 0;
    std::uint32_t max_terms = kDefaultMaxTerms;
    Hyperparams hyperparams;
    bool parallel = true;
};

struct ClassifyOptions {
    std::string model_path;
    std::string corpus_path;  // exactly one of corpus_path / text
    std::string text;
    AdjudicatorOptions adjudicator;
    std::string out_path;  // traces JSONL; stdout when empty
    int parallelism = 1;
};

struct EvaluateOptions {
    std::string model_path;
    std::string corpus_path;
    AdjudicatorOptions adjudicator;
    std::string out_dir;
    int parallelism = 1;
};

struct AugmentOptions {
    std::string corpus_path;
    std::string lexicon_path;
    std::string out_path;
    std::uint64_t seed = 0;
    std::vector<std::string> transforms;  // names, applied in order
    bool keep_originals = true;
    double p_delete = 0.10;
    double p_synonym = 0.10;
};

struct BenchOptions {
    std::string model_path;
    std::string corpus_path;
    AdjudicatorOptions adjudicator;
    std::string mode = "both";  // both | hierarchical | all_llm
    std::string out_path;       // JSON report; stdout table always printed
    int parallelism = 1;
};

struct BudgetOptions {
    std::uint64_t hidden_size = 0;
    std::uint64_t rank = 0;
    std::uint64_t layers = 0;
    std::uint64_t target_modules = 0;
    std::uint64_t total_params = 8'037'076'992ULL;
};

// Command entry points. They throw scamdet errors; run() maps exception
// types to exit codes.
void cmd_train(const TrainOptions& options);
void cmd_classify(const ClassifyOptions& options);
void cmd_evaluate(const EvaluateOptions& options);
void cmd_augment(const AugmentOptions& options);
void cmd_bench(const BenchOptions& options);
void cmd_budget(const BudgetOptions& options);

/// Full argv dispatcher; returns a process exit code.
int run(int argc, const char* const* argv);

}  // namespace scamdet::cli
