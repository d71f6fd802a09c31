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

// Chat-completions HTTP client. Speaks the OpenAI-style wire format so any
// locally served fine-tuned model (or compatible endpoint) plugs in by
// configuration alone: POST {model, messages, temperature, top_k,
// max_tokens}, read choices[0].message.content.

#include <fstream>
#include <semaphore>

#include <httplib.h>
#include <json.hpp>

#include "scamdet/adjudicator.hpp"
#include "scamdet/errors.hpp"

namespace scamdet {

namespace {

using json = nlohmann::json;

double env_double(const char* name, double fallback) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') {
        return fallback;
    }
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw UsageError(std::string(name) + " is not a number: " + v);
    }
}

int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') {
        return fallback;
    }
    try {
        return std::stoi(v);
    } catch (const std::exception&) {
        throw UsageError(std::string(name) + " is not an integer: " + v);
    }
}

std::string env_string(const char* name, std::string fallback) {
    const char* v = std::getenv(name);
    return (v == nullptr || *v == '\0') ? fallback : std::string(v);
}

}  // namespace

HttpBackendConfig HttpBackendConfig::from_env() {
    HttpBackendConfig config;
    config.base_url = env_string("SCAMDET_BACKEND_URL", "");
    config.model = env_string("SCAMDET_BACKEND_MODEL", config.model);
    config.timeout_s = env_double("SCAMDET_BACKEND_TIMEOUT_S", config.timeout_s);
    config.max_inflight =
        env_int("SCAMDET_BACKEND_INFLIGHT", config.max_inflight);
    if (std::getenv("SCAMDET_BACKEND_RETRIES") != nullptr) {
        config.retries = env_int("SCAMDET_BACKEND_RETRIES", 2);
    }
    return config;
}

HttpBackendConfig HttpBackendConfig::from_file(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open backend config: " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SchemaError("backend config is not valid JSON: " +
                          std::string(e.what()));
    }
    HttpBackendConfig config;
    config.base_url = j.value("base_url", config.base_url);
    config.path = j.value("path", config.path);
    config.model = j.value("model", config.model);
    config.timeout_s = j.value("timeout_s", config.timeout_s);
    config.max_inflight = j.value("max_inflight", config.max_inflight);
    if (j.contains("retries")) {
        config.retries = j["retries"].get<int>();
    }
    return config;
}

struct HttpBackend::Inflight {
    explicit Inflight(int limit) : slots(limit) {}
    std::counting_semaphore<> slots;
};

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
    if (config_.base_url.empty()) {
        throw BackendError(
            "http backend requires a base URL (flag or SCAMDET_BACKEND_URL)");
    }
    if (config_.max_inflight < 1) {
        throw BackendError("http backend in-flight limit must be >= 1");
    }
    inflight_ = std::make_unique<Inflight>(config_.max_inflight);
}

HttpBackend::~HttpBackend() = default;

BackendReply HttpBackend::complete(const PromptTemplate& prompt,
                                   const DecodingConfig& decoding) {
    json request;
    request["model"] = config_.model;
    request["messages"] = json::array(
        {{{"role", "system"}, {"content", prompt.system_instruction}},
         {{"role", "user"}, {"content", prompt.user_content}}});
    request["temperature"] = decoding.temperature;
    request["top_k"] = decoding.top_k;
    request["max_tokens"] = decoding.max_new_tokens;

    inflight_->slots.acquire();
    struct Release {
        std::counting_semaphore<>& slots;
        ~Release() { slots.release(); }
    } release{inflight_->slots};

    // One client per request: cpp-httplib clients are not safe for
    // concurrent calls, and connection reuse is irrelevant at the request
    // rates this stage sees.
    httplib::Client client(config_.base_url);
    client.set_connection_timeout(std::chrono::duration<double>(config_.timeout_s));
    client.set_read_timeout(std::chrono::duration<double>(config_.timeout_s));
    client.set_write_timeout(std::chrono::duration<double>(config_.timeout_s));

    const httplib::Result result =
        client.Post(config_.path, request.dump(), "application/json");
    if (!result) {
        return BackendReply{false, "",
                            "connection failure: " +
                                httplib::to_string(result.error()),
                            true};
    }
    if (result->status == 429 || result->status >= 500) {
        return BackendReply{
            false, "", "http status " + std::to_string(result->status), true};
    }
    if (result->status != 200) {
        return BackendReply{
            false, "", "http status " + std::to_string(result->status), false};
    }

    try {
        const json body = json::parse(result->body);
        const json& choices = body.at("choices");
        if (!choices.is_array() || choices.empty()) {
            return BackendReply{false, "", "response has no choices", false};
        }
        return BackendReply{
            true, choices.at(0).at("message").at("content").get<std::string>(),
            "", false};
    } catch (const json::exception& e) {
        return BackendReply{
            false, "", "malformed response body: " + std::string(e.what()),
            false};
    }
}

}  // namespace scamdet
