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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "scamdet/adjudicator.hpp"
#include "scamdet/classifiers.hpp"
#include "scamdet/corpus.hpp"

namespace scamdet {

/// The four ensemble votes in fixed order.
struct EnsembleVotes {
    int rf = 0;
    int dt = 0;
    int xgb = 0;
    int knn = 0;

    static EnsembleVotes from_array(const std::array<int, 4>& votes) {
        return EnsembleVotes{votes[0], votes[1], votes[2], votes[3]};
    }
    std::array<int, 4> as_array() const { return {rf, dt, xgb, knn}; }
    bool unanimous() const { return rf == dt && dt == xgb && xgb == knn; }
    int ones() const { return rf + dt + xgb + knn; }
};

/// Per-model vote weights; defaults follow the strongest-members-first
/// scheme (forest and nearest-neighbor 0.3 each, tree and boosting 0.2
/// each). Must be non-negative and sum to 1 within 1e-9.
struct VotingWeights {
    double rf = 0.3;
    double knn = 0.3;
    double dt = 0.2;
    double xgb = 0.2;

    void validate() const;
};

/// Mode of the four votes. is_tie is true on a 2-2 split, in which case
/// the label field is meaningless and must not be read; callers branch on
/// is_tie first.
struct MajorityResult {
    int label = 0;
    bool is_tie = false;
};

MajorityResult majority_vote(const EnsembleVotes& votes);

/// Class with the highest cumulative weight. An exact tie (0.5 vs 0.5
/// within 1e-9) resolves to the nearest-neighbor vote, consistent with
/// the system-wide tie-breaker.
int weighted_vote(const EnsembleVotes& votes, const VotingWeights& weights);

enum class FallbackKind {
    none,
    majority,
    knn_tiebreak,
};

std::string_view to_string(FallbackKind kind);

struct StageTimings {
    double ensemble_s = 0.0;    // featurize + four predictions
    double adjudicate_s = 0.0;  // language-model stage
    double fallback_s = 0.0;    // majority vote / tie-break
};

/// Full audit record for one routed message.
struct RoutingTrace {
    std::string id;
    EnsembleVotes votes;
    bool escalated = false;
    std::optional<int> adjudication;  // 1 / 0 / -1, present iff escalated
    bool adjudicator_transport_failed = false;
    bool decoding_conformant = true;  // false when decoding was overridden
    FallbackKind fallback_used = FallbackKind::none;
    int final_label = 0;
    StageTimings timings;
    std::string error;  // set when a batch captured a per-message failure

    std::string to_json_line() const;
};

struct RouteResult {
    int final_label = 0;
    FallbackKind fallback = FallbackKind::none;
};

/// Decision ladder applied after an escalation returned `verdict`
/// (1, 0 or -1): a definite verdict is final; uncertainty falls back to
/// the ensemble majority, and a 2-2 tie to the nearest-neighbor vote.
RouteResult resolve_with_verdict(const EnsembleVotes& votes, int verdict);

/// Routes one message: unanimity short-circuits, any disagreement
/// escalates to the adjudicator, uncertainty takes the fallback ladder.
/// Adjudicator transport failure degrades to the fallback; it never
/// aborts the pipeline.
RoutingTrace classify_hierarchical(const std::string& text,
                                   const TrainedEnsemble& ensemble,
                                   const Adjudicator& adjudicator);

/// Batch routing with optional parallelism. Output order always matches
/// input order and per-message results match the sequential path;
/// per-message exceptions are captured in the trace instead of aborting
/// the batch.
std::vector<RoutingTrace> classify_batch(const Corpus& corpus,
                                         const TrainedEnsemble& ensemble,
                                         const Adjudicator& adjudicator,
                                         int parallelism = 1);

}  // namespace scamdet
