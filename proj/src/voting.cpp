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

#include "scamdet/voting.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "scamdet/errors.hpp"

namespace scamdet {

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void VotingWeights::validate() const {
    for (const double w : {rf, knn, dt, xgb}) {
        if (w < 0.0) {
            throw DataError("voting weights must be non-negative");
        }
    }
    if (std::abs(rf + knn + dt + xgb - 1.0) > 1e-9) {
        throw DataError("voting weights must sum to 1");
    }
}

MajorityResult majority_vote(const EnsembleVotes& votes) {
    const int ones = votes.ones();
    if (ones == 2) {
        return MajorityResult{0, true};
    }
    return MajorityResult{ones > 2 ? kScam : kNotScam, false};
}

int weighted_vote(const EnsembleVotes& votes, const VotingWeights& weights) {
    weights.validate();
    const double score_scam = weights.rf * votes.rf + weights.dt * votes.dt +
                              weights.xgb * votes.xgb +
                              weights.knn * votes.knn;
    const double score_not = (weights.rf + weights.dt + weights.xgb +
                              weights.knn) -
                             score_scam;
    if (std::abs(score_scam - score_not) <= 1e-9) {
        return votes.knn;
    }
    return score_scam > score_not ? kScam : kNotScam;
}

std::string_view to_string(FallbackKind kind) {
    switch (kind) {
        case FallbackKind::none: return "none";
        case FallbackKind::majority: return "majority";
        case FallbackKind::knn_tiebreak: return "knn_tiebreak";
    }
    return "none";
}

RouteResult resolve_with_verdict(const EnsembleVotes& votes, int verdict) {
    if (verdict == kVerdictScam || verdict == kVerdictNotScam) {
        return RouteResult{verdict, FallbackKind::none};
    }
    const MajorityResult majority = majority_vote(votes);
    if (!majority.is_tie) {
        return RouteResult{majority.label, FallbackKind::majority};
    }
    return RouteResult{votes.knn, FallbackKind::knn_tiebreak};
}

RoutingTrace classify_hierarchical(const std::string& text,
                                   const TrainedEnsemble& ensemble,
                                   const Adjudicator& adjudicator) {
    RoutingTrace trace;

    const auto ensemble_start = Clock::now();
    const FeatureVector x = vectorize(ensemble.vocab, text);
    trace.votes = EnsembleVotes::from_array(ensemble.predict_votes(x));
    trace.timings.ensemble_s = seconds_since(ensemble_start);

    if (trace.votes.unanimous()) {
        trace.final_label = trace.votes.rf;
        return trace;
    }

    trace.escalated = true;
    const auto adjudicate_start = Clock::now();
    const Adjudication adjudication = adjudicator.adjudicate(text);
    trace.timings.adjudicate_s = seconds_since(adjudicate_start);
    trace.adjudication = adjudication.verdict;
    trace.adjudicator_transport_failed = adjudication.transport_failed;
    trace.decoding_conformant = adjudication.decoding_conformant;

    const auto fallback_start = Clock::now();
    const RouteResult result =
        resolve_with_verdict(trace.votes, adjudication.verdict);
    trace.final_label = result.final_label;
    trace.fallback_used = result.fallback;
    if (result.fallback != FallbackKind::none) {
        trace.timings.fallback_s = seconds_since(fallback_start);
    }
    return trace;
}

std::vector<RoutingTrace> classify_batch(const Corpus& corpus,
                                         const TrainedEnsemble& ensemble,
                                         const Adjudicator& adjudicator,
                                         int parallelism) {
    if (parallelism < 1) {
        throw DataError("parallelism must be >= 1");
    }
    std::vector<RoutingTrace> traces(corpus.size());
    if (corpus.empty()) {
        return traces;
    }

    const auto worker_count = static_cast<std::size_t>(
        std::min<std::size_t>(static_cast<std::size_t>(parallelism),
                              corpus.size()));
    std::atomic<std::size_t> next{0};
    const auto run = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= corpus.size()) {
                return;
            }
            const Message& m = corpus.messages[i];
            try {
                traces[i] =
                    classify_hierarchical(m.text, ensemble, adjudicator);
            } catch (const std::exception& e) {
                traces[i] = RoutingTrace{};
                traces[i].error = e.what();
            }
            traces[i].id = m.id;
        }
    };

    if (worker_count == 1) {
        run();
    } else {
        std::vector<std::thread> workers;
        workers.reserve(worker_count);
        for (std::size_t w = 0; w < worker_count; ++w) {
            workers.emplace_back(run);
        }
        for (std::thread& t : workers) {
            t.join();
        }
    }
    return traces;
}

std::string RoutingTrace::to_json_line() const {
    ordered_json j;
    j["id"] = id;
    j["votes"] = {{"rf", votes.rf},
                  {"dt", votes.dt},
                  {"xgb", votes.xgb},
                  {"knn", votes.knn}};
    j["escalated"] = escalated;
    if (adjudication.has_value()) {
        j["adjudication"] = *adjudication;
    } else {
        j["adjudication"] = nullptr;
    }
    j["adjudicator_transport_failed"] = adjudicator_transport_failed;
    if (escalated && !decoding_conformant) {
        j["decoding_conformant"] = false;
    }
    j["fallback"] = to_string(fallback_used);
    j["final"] = final_label;
    j["timings"] = {{"ensemble_s", timings.ensemble_s},
                    {"adjudicate_s", timings.adjudicate_s},
                    {"fallback_s", timings.fallback_s}};
    if (!error.empty()) {
        j["error"] = error;
    }
    return j.dump();
}

}  // namespace scamdet
