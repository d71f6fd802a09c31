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

#include "scamdet/adjudicator.hpp"

#include <thread>

#include "scamdet/errors.hpp"

namespace scamdet {

PromptTemplate build_prompt(const std::string& text,
                            const PromptLimits& limits) {
    if (text.empty()) {
        throw DataError("cannot build a prompt from empty text");
    }
    if (text.size() > limits.max_chars) {
        throw DataError("message of " + std::to_string(text.size()) +
                        " characters exceeds the prompt limit of " +
                        std::to_string(limits.max_chars) +
                        "; refusing to truncate");
    }
    return PromptTemplate{std::string(kClassifySystemInstruction), text};
}

namespace {

bool is_ascii_alnum(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
           (c >= 'A' && c <= 'Z');
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool word_at(std::string_view raw, std::size_t pos, std::string_view word) {
    if (pos + word.size() > raw.size()) {
        return false;
    }
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (ascii_lower(raw[pos + i]) != word[i]) {
            return false;
        }
    }
    const bool left_edge = pos == 0 || !is_ascii_alnum(raw[pos - 1]);
    const std::size_t end = pos + word.size();
    const bool right_edge = end == raw.size() || !is_ascii_alnum(raw[end]);
    return left_edge && right_edge;
}

}  // namespace

int parse_response(std::string_view raw) {
    int verdict = kVerdictUncertain;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (word_at(raw, i, "yes")) {
            verdict = kVerdictScam;
        } else if (word_at(raw, i, "no")) {
            verdict = kVerdictNotScam;
        }
    }
    return verdict;
}

std::shared_ptr<StubBackend> StubBackend::scripted(std::vector<Reply> replies) {
    auto stub = std::shared_ptr<StubBackend>(new StubBackend());
    stub->use_script_ = true;
    stub->script_.assign(replies.begin(), replies.end());
    return stub;
}

std::shared_ptr<StubBackend> StubBackend::mapped(
    std::map<std::string, std::string> by_text, std::string fallback) {
    auto stub = std::shared_ptr<StubBackend>(new StubBackend());
    stub->by_text_ = std::move(by_text);
    stub->fallback_ = std::move(fallback);
    return stub;
}

BackendReply StubBackend::complete(const PromptTemplate& prompt,
                                   const DecodingConfig&) {
    std::optional<std::string> reply;
    std::chrono::milliseconds delay{0};
    {
        std::lock_guard lock(mutex_);
        ++calls_;
        delay = delay_;
        if (use_script_) {
            if (script_.empty()) {
                return BackendReply{false, "", "stub script exhausted", false};
            }
            reply = script_.front();
            script_.pop_front();
        } else {
            const auto it = by_text_.find(prompt.user_content);
            reply = it != by_text_.end() ? it->second : fallback_;
        }
    }
    if (delay.count() > 0) {
        std::this_thread::sleep_for(delay);
    }
    if (!reply.has_value()) {
        return BackendReply{false, "", "scripted transport failure", true};
    }
    return BackendReply{true, *reply, "", false};
}

Adjudicator::Adjudicator(std::shared_ptr<Backend> backend,
                         DecodingConfig decoding, RetryPolicy retry,
                         PromptLimits limits)
    : backend_(std::move(backend)),
      decoding_(decoding),
      retry_(retry),
      limits_(limits) {
    if (!backend_) {
        throw BackendError("adjudicator requires a backend");
    }
}

Adjudication Adjudicator::adjudicate(const std::string& text) const {
    const auto start = std::chrono::steady_clock::now();
    Adjudication result;
    result.decoding_conformant = decoding_.conformant();

    const PromptTemplate prompt = build_prompt(text, limits_);
    BackendReply reply;
    auto backoff = retry_.initial_backoff;
    for (int attempt = 0;; ++attempt) {
        reply = backend_->complete(prompt, decoding_);
        if (reply.ok || !reply.retryable || attempt >= retry_.max_retries) {
            result.retries = attempt;
            break;
        }
        if (backoff.count() > 0) {
            std::this_thread::sleep_for(backoff);
        }
        backoff = std::chrono::milliseconds(static_cast<long long>(
            static_cast<double>(backoff.count()) * retry_.multiplier));
    }

    if (reply.ok) {
        result.raw_response = reply.content;
        result.verdict = parse_response(reply.content);
    } else {
        result.transport_failed = true;
        result.raw_response = "[transport-error] " + reply.error;
        result.verdict = kVerdictUncertain;
    }
    result.latency_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

std::uint64_t lora_trainable_params(std::uint64_t d_h, std::uint64_t r,
                                    std::uint64_t layers,
                                    std::uint64_t n_target_modules) {
    if (d_h == 0 || r == 0 || layers == 0 || n_target_modules == 0) {
        throw DataError("adapter budget inputs must all be >= 1");
    }
    return 2ULL * n_target_modules * d_h * r * layers;
}

double lora_trainable_fraction(std::uint64_t trainable, std::uint64_t total) {
    if (total == 0) {
        throw DataError("total parameter count must be >= 1");
    }
    return static_cast<double>(trainable) / static_cast<double>(total);
}

}  // namespace scamdet
