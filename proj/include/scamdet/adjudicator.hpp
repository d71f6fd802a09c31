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

#include <chrono>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scamdet {

// Verdicts returned by the language-model stage.
inline constexpr int kVerdictScam = 1;
inline constexpr int kVerdictNotScam = 0;
inline constexpr int kVerdictUncertain = -1;

/// System instruction sent with every classification request. Byte-exact;
/// downstream parsing depends on the constrained answer format.
inline constexpr std::string_view kClassifySystemInstruction =
    "You are a scam-detection assistant. Respond ONLY with 'yes' (scam) or "
    "'no' (not scam)";

struct PromptTemplate {
    std::string system_instruction;
    std::string user_content;
};

struct PromptLimits {
    std::size_t max_chars = 8000;
};

/// Fixed instruction plus the untouched message text. Rejects empty and
/// over-length input instead of truncating.
PromptTemplate build_prompt(const std::string& text,
                            const PromptLimits& limits = {});

/// Finds case-insensitive whole-word "yes"/"no" occurrences (boundaries:
/// ASCII non-alphanumeric byte or string edge) and decides from the LAST
/// match: yes -> 1, no -> 0, no match -> -1. Total function.
int parse_response(std::string_view raw);

/// Deterministic decoding request parameters. The shipped defaults are the
/// conforming configuration; any override is carried through to traces as
/// non-conformant.
struct DecodingConfig {
    double temperature = 0.0;
    bool sampling = false;
    int top_k = 1;
    int max_new_tokens = 10;

    bool conformant() const {
        return temperature == 0.0 && !sampling && top_k == 1 &&
               max_new_tokens == 10;
    }
};

struct Adjudication {
    int verdict = kVerdictUncertain;
    std::string raw_response;
    double latency_s = 0.0;
    int retries = 0;
    bool transport_failed = false;
    bool decoding_conformant = true;
};

struct BackendReply {
    bool ok = false;
    std::string content;
    std::string error;
    bool retryable = false;
};

/// A chat-completion endpoint. Implementations must tolerate concurrent
/// complete() calls.
class Backend {
public:
    virtual ~Backend() = default;
    virtual BackendReply complete(const PromptTemplate& prompt,
                                  const DecodingConfig& decoding) = 0;
    virtual std::string_view name() const = 0;
};

/// Always answers with empty content, which parses to uncertain: the
/// zero-dependency mode where every escalation takes the fallback ladder.
class NullBackend final : public Backend {
public:
    BackendReply complete(const PromptTemplate&,
                          const DecodingConfig&) override {
        return BackendReply{true, "", "", false};
    }
    std::string_view name() const override { return "none"; }
};

/// Scripted backend for tests and offline runs. Either replays an ordered
/// list of replies (nullopt entries simulate transport failures) or maps
/// message text to a reply. Calls are serialized internally so scripted
/// order stays deterministic.
class StubBackend final : public Backend {
public:
    using Reply = std::optional<std::string>;  // nullopt = transport failure

    static std::shared_ptr<StubBackend> scripted(std::vector<Reply> replies);
    static std::shared_ptr<StubBackend> mapped(
        std::map<std::string, std::string> by_text, std::string fallback);

    void set_delay(std::chrono::milliseconds delay) {
        std::lock_guard lock(mutex_);
        delay_ = delay;
    }

    BackendReply complete(const PromptTemplate& prompt,
                          const DecodingConfig& decoding) override;
    std::string_view name() const override { return "stub"; }

    int calls() const {
        std::lock_guard lock(mutex_);
        return calls_;
    }

private:
    StubBackend() = default;

    mutable std::mutex mutex_;
    std::deque<Reply> script_;
    bool use_script_ = false;
    std::map<std::string, std::string> by_text_;
    std::string fallback_;
    std::chrono::milliseconds delay_{0};
    int calls_ = 0;
};

/// OpenAI-style chat-completions client configuration. Environment
/// variables (SCAMDET_BACKEND_URL, SCAMDET_BACKEND_MODEL,
/// SCAMDET_BACKEND_TIMEOUT_S, SCAMDET_BACKEND_RETRIES,
/// SCAMDET_BACKEND_INFLIGHT) fill unset fields; explicit flags win.
struct HttpBackendConfig {
    std::string base_url;  // e.g. http://localhost:8000
    std::string path = "/v1/chat/completions";
    std::string model = "local-model";
    double timeout_s = 30.0;
    int max_inflight = 4;
    std::optional<int> retries;  // consumed by the caller's retry policy

    static HttpBackendConfig from_env();
    static HttpBackendConfig from_file(const std::filesystem::path& path);
};

class HttpBackend final : public Backend {
public:
    explicit HttpBackend(HttpBackendConfig config);
    ~HttpBackend() override;

    BackendReply complete(const PromptTemplate& prompt,
                          const DecodingConfig& decoding) override;
    std::string_view name() const override { return "http"; }

    const HttpBackendConfig& config() const { return config_; }

private:
    HttpBackendConfig config_;
    struct Inflight;
    std::unique_ptr<Inflight> inflight_;
};

struct RetryPolicy {
    int max_retries = 2;
    std::chrono::milliseconds initial_backoff{100};
    double multiplier = 2.0;
};

/// The escalation stage: builds the prompt, sends it with deterministic
/// decoding, retries transient transport failures with exponential
/// backoff, and parses the reply. Transport failure after retries
/// degrades to an uncertain verdict; it never throws mid-pipeline.
class Adjudicator {
public:
    explicit Adjudicator(std::shared_ptr<Backend> backend,
                         DecodingConfig decoding = {}, RetryPolicy retry = {},
                         PromptLimits limits = {});

    Adjudication adjudicate(const std::string& text) const;

    const Backend& backend() const { return *backend_; }

private:
    std::shared_ptr<Backend> backend_;
    DecodingConfig decoding_;
    RetryPolicy retry_;
    PromptLimits limits_;
};

/// Trainable-parameter count for rank-decomposed adapter fine-tuning:
/// 2 matrices per targeted module, n modules per layer, hidden size d_h,
/// rank r, L layers. Exact integer arithmetic.
std::uint64_t lora_trainable_params(std::uint64_t d_h, std::uint64_t r,
                                    std::uint64_t layers,
                                    std::uint64_t n_target_modules);

/// trainable / total as a double.
double lora_trainable_fraction(std::uint64_t trainable, std::uint64_t total);

}  // namespace scamdet
