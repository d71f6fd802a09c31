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

#include <memory>

#include <doctest.h>

#include "scamdet/errors.hpp"
#include "scamdet/voting.hpp"
#include "support.hpp"

using namespace scamdet;

namespace {

EnsembleVotes votes_from_bits(int pattern) {
    // bit order: rf, dt, xgb, knn
    return EnsembleVotes{(pattern >> 3) & 1, (pattern >> 2) & 1,
                         (pattern >> 1) & 1, pattern & 1};
}

}  // namespace

TEST_CASE("majority_vote modes and ties") {
    CHECK(majority_vote(EnsembleVotes{1, 1, 1, 0}).label == 1);
    CHECK_FALSE(majority_vote(EnsembleVotes{1, 1, 1, 0}).is_tie);
    CHECK(majority_vote(EnsembleVotes{1, 1, 0, 0}).is_tie);
    CHECK(majority_vote(EnsembleVotes{0, 0, 0, 0}).label == 0);
    CHECK_FALSE(majority_vote(EnsembleVotes{0, 0, 0, 0}).is_tie);
    CHECK(majority_vote(EnsembleVotes{1, 1, 1, 1}).label == 1);
}

TEST_CASE("weighted_vote with the default weights") {
    // forest and nearest-neighbor agree: 0.6 beats 0.4
    CHECK(weighted_vote(EnsembleVotes{1, 0, 0, 1}, VotingWeights{}) == 1);
    CHECK(weighted_vote(EnsembleVotes{0, 0, 0, 0}, VotingWeights{}) == 0);
    CHECK(weighted_vote(EnsembleVotes{1, 1, 1, 1}, VotingWeights{}) == 1);
}

TEST_CASE("weighted_vote resolves exact ties to the nearest-neighbor vote") {
    const VotingWeights uniform{0.25, 0.25, 0.25, 0.25};
    // 2-2 either way: the knn component decides
    CHECK(weighted_vote(EnsembleVotes{1, 1, 0, 0}, uniform) == 0);
    CHECK(weighted_vote(EnsembleVotes{1, 0, 0, 1}, uniform) == 1);
    CHECK(weighted_vote(EnsembleVotes{0, 0, 1, 1}, uniform) == 1);
}

TEST_CASE("weighted_vote validates the weights") {
    CHECK_THROWS_AS(
        weighted_vote(EnsembleVotes{1, 0, 0, 0}, VotingWeights{0.5, 0.5, 0.5, 0.5}),
        DataError);
    CHECK_THROWS_AS(
        weighted_vote(EnsembleVotes{1, 0, 0, 0}, VotingWeights{-0.2, 0.6, 0.3, 0.3}),
        DataError);
}

TEST_CASE("weighted_vote agrees with majority_vote off ties") {
    for (int pattern = 0; pattern < 16; ++pattern) {
        const EnsembleVotes votes = votes_from_bits(pattern);
        const MajorityResult majority = majority_vote(votes);
        if (majority.is_tie) {
            continue;
        }
        CHECK(weighted_vote(votes, VotingWeights{}) == majority.label);
        CHECK(weighted_vote(votes, VotingWeights{0.25, 0.25, 0.25, 0.25}) ==
              majority.label);
    }
}

TEST_CASE("resolve_with_verdict follows the decision ladder") {
    // definite adjudication is final regardless of votes
    for (int pattern = 0; pattern < 16; ++pattern) {
        const EnsembleVotes votes = votes_from_bits(pattern);
        CHECK(resolve_with_verdict(votes, 1).final_label == 1);
        CHECK(resolve_with_verdict(votes, 0).final_label == 0);
        CHECK(resolve_with_verdict(votes, 1).fallback == FallbackKind::none);
    }
    // uncertain: majority, then nearest-neighbor on ties
    CHECK(resolve_with_verdict(EnsembleVotes{0, 1, 1, 1}, -1).final_label == 1);
    CHECK(resolve_with_verdict(EnsembleVotes{0, 1, 1, 1}, -1).fallback ==
          FallbackKind::majority);
    CHECK(resolve_with_verdict(EnsembleVotes{1, 1, 0, 0}, -1).final_label == 0);
    CHECK(resolve_with_verdict(EnsembleVotes{1, 1, 0, 0}, -1).fallback ==
          FallbackKind::knn_tiebreak);
    CHECK(resolve_with_verdict(EnsembleVotes{1, 0, 0, 1}, -1).final_label == 1);
}

namespace {

// Four-model ensemble whose members respond to disjoint trigger tokens:
// a message mentioning a member's trigger makes that member (and only it)
// vote 1. Each learner is trained on all 16 trigger-combination texts
// with labels set to its own trigger bit, so any of the 16 vote patterns
// can be produced end to end.
struct RiggedEnsemble {
    TrainedEnsemble ensemble;

    // Text whose four votes equal the given pattern (bit order rf, dt,
    // xgb, knn).
    static std::string text_for(int pattern) {
        std::string text = "filler text";
        if ((pattern >> 3) & 1) text += " rfmark";
        if ((pattern >> 2) & 1) text += " dtmark";
        if ((pattern >> 1) & 1) text += " xgmark";
        if (pattern & 1) text += " knmark";
        return text;
    }

    static RiggedEnsemble make() {
        Corpus corpus;
        for (int pattern = 0; pattern < 16; ++pattern) {
            corpus.messages.push_back(scamdet::testing::make_message(
                "t" + std::to_string(pattern), text_for(pattern),
                pattern & 1));
        }

        RiggedEnsemble rigged;
        rigged.ensemble.vocab = fit_vocabulary(corpus, 200);
        const std::uint64_t fingerprint = rigged.ensemble.vocab.fingerprint();

        std::vector<FeatureVector> x;
        for (const Message& msg : corpus.messages) {
            x.push_back(vectorize(rigged.ensemble.vocab, msg.text));
        }

        Hyperparams hp;
        // deterministic degenerate forest so the rig has no sampling noise
        hp.rf.n_trees = 1;
        hp.rf.bootstrap = false;
        hp.rf.sqrt_features = false;
        hp.gbt.n_rounds = 20;
        hp.knn.k = 1;

        for (std::size_t m = 0; m < kLearnerOrder.size(); ++m) {
            std::vector<int> y;
            for (int pattern = 0; pattern < 16; ++pattern) {
                y.push_back((pattern >> (3 - m)) & 1);
            }
            rigged.ensemble.models[m] =
                train(kLearnerOrder[m], hp, x, y, 42, fingerprint);
        }
        rigged.ensemble.validate();
        return rigged;
    }
};

}  // namespace

TEST_CASE("rigged ensemble produces every vote pattern") {
    const RiggedEnsemble rigged = RiggedEnsemble::make();
    for (int pattern = 0; pattern < 16; ++pattern) {
        const FeatureVector x =
            vectorize(rigged.ensemble.vocab, RiggedEnsemble::text_for(pattern));
        const auto votes = rigged.ensemble.predict_votes(x);
        CHECK(votes[0] == ((pattern >> 3) & 1));
        CHECK(votes[1] == ((pattern >> 2) & 1));
        CHECK(votes[2] == ((pattern >> 1) & 1));
        CHECK(votes[3] == (pattern & 1));
    }
}

TEST_CASE("the adjudicator is consulted exactly on disagreement") {
    const RiggedEnsemble rigged = RiggedEnsemble::make();
    for (int pattern = 0; pattern < 16; ++pattern) {
        auto stub = StubBackend::mapped({}, "yes");
        const Adjudicator adjudicator(stub);
        const RoutingTrace trace = classify_hierarchical(
            RiggedEnsemble::text_for(pattern), rigged.ensemble, adjudicator);
        const bool unanimous = pattern == 0 || pattern == 15;
        CHECK(trace.escalated == !unanimous);
        CHECK(stub->calls() == (unanimous ? 0 : 1));
        CHECK(trace.adjudication.has_value() == !unanimous);
        if (unanimous) {
            CHECK(trace.fallback_used == FallbackKind::none);
            CHECK(trace.final_label == (pattern == 15 ? 1 : 0));
        } else {
            // definite verdict is final
            CHECK(trace.final_label == 1);
        }
    }
}

TEST_CASE("adjudicator verdict overrides a clear majority") {
    const RiggedEnsemble rigged = RiggedEnsemble::make();
    auto stub = StubBackend::mapped({}, "no");
    const Adjudicator adjudicator(stub);
    // votes 1,1,1,0: majority says scam, the expert says no
    const RoutingTrace trace = classify_hierarchical(
        RiggedEnsemble::text_for(0b1110), rigged.ensemble, adjudicator);
    CHECK(trace.escalated);
    CHECK(trace.final_label == 0);
    CHECK(trace.fallback_used == FallbackKind::none);
}

TEST_CASE("uncertain adjudication falls back to majority then knn") {
    const RiggedEnsemble rigged = RiggedEnsemble::make();
    auto stub = StubBackend::mapped({}, "cannot tell");
    const Adjudicator adjudicator(stub);

    // 0,1,1,1 -> majority 1
    RoutingTrace trace = classify_hierarchical(
        RiggedEnsemble::text_for(0b0111), rigged.ensemble, adjudicator);
    CHECK(trace.adjudication == kVerdictUncertain);
    CHECK(trace.fallback_used == FallbackKind::majority);
    CHECK(trace.final_label == 1);

    // 1,1,0,0 -> tie -> knn vote (0)
    trace = classify_hierarchical(RiggedEnsemble::text_for(0b1100),
                                  rigged.ensemble, adjudicator);
    CHECK(trace.fallback_used == FallbackKind::knn_tiebreak);
    CHECK(trace.final_label == 0);

    // 1,0,0,1 -> tie -> knn vote (1)
    trace = classify_hierarchical(RiggedEnsemble::text_for(0b1001),
                                  rigged.ensemble, adjudicator);
    CHECK(trace.fallback_used == FallbackKind::knn_tiebreak);
    CHECK(trace.final_label == 1);
}

TEST_CASE("transport failure degrades to the fallback ladder") {
    const RiggedEnsemble rigged = RiggedEnsemble::make();
    auto stub = StubBackend::scripted(
        {std::nullopt, std::nullopt, std::nullopt});
    RetryPolicy retry;
    retry.max_retries = 2;
    retry.initial_backoff = std::chrono::milliseconds(1);
    const Adjudicator adjudicator(stub, DecodingConfig{}, retry);

    const RoutingTrace trace = classify_hierarchical(
        RiggedEnsemble::text_for(0b0111), rigged.ensemble, adjudicator);
    CHECK(trace.adjudication == kVerdictUncertain);
    CHECK(trace.adjudicator_transport_failed);
    CHECK(trace.final_label == 1);  // majority fallback
    CHECK(stub->calls() == 3);      // initial try + 2 retries
}

TEST_CASE("classify_batch preserves order and matches the sequential path") {
    scamdet::testing::SyntheticSpec spec;
    spec.n_messages = 120;
    const Corpus corpus = scamdet::testing::make_synthetic_corpus(spec);

    EnsembleTrainConfig config;
    config.hyperparams.rf.n_trees = 8;
    config.hyperparams.gbt.n_rounds = 8;
    config.seed = 2;
    const TrainedEnsemble ensemble = train_ensemble(corpus, config);

    const Adjudicator adjudicator(
        StubBackend::mapped({}, "yes"));

    const auto sequential = classify_batch(corpus, ensemble, adjudicator, 1);
    const auto parallel = classify_batch(corpus, ensemble, adjudicator, 4);
    REQUIRE(sequential.size() == corpus.size());
    REQUIRE(parallel.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CHECK(sequential[i].id == corpus.messages[i].id);
        CHECK(parallel[i].id == sequential[i].id);
        CHECK(parallel[i].final_label == sequential[i].final_label);
        CHECK(parallel[i].escalated == sequential[i].escalated);
    }

    // trace structural invariants hold on every record
    for (const RoutingTrace& t : sequential) {
        if (!t.escalated) {
            CHECK_FALSE(t.adjudication.has_value());
            CHECK(t.fallback_used == FallbackKind::none);
        }
        if (t.fallback_used != FallbackKind::none) {
            REQUIRE(t.adjudication.has_value());
            CHECK(*t.adjudication == kVerdictUncertain);
        }
        if (t.fallback_used == FallbackKind::knn_tiebreak) {
            CHECK(t.votes.ones() == 2);
            CHECK(t.final_label == t.votes.knn);
        }
    }
}

TEST_CASE("classify_batch on an empty corpus returns an empty list") {
    scamdet::testing::SyntheticSpec spec;
    spec.n_messages = 30;
    const Corpus corpus = scamdet::testing::make_synthetic_corpus(spec);
    EnsembleTrainConfig config;
    config.hyperparams.rf.n_trees = 3;
    config.hyperparams.gbt.n_rounds = 3;
    const TrainedEnsemble ensemble = train_ensemble(corpus, config);
    const Adjudicator adjudicator(std::make_shared<NullBackend>());
    CHECK(classify_batch(Corpus{}, ensemble, adjudicator, 4).empty());
    CHECK_THROWS_AS(classify_batch(Corpus{}, ensemble, adjudicator, 0),
                    DataError);
}

TEST_CASE("unanimous batches never escalate") {
    // all-benign messages, strongly separable: votes agree everywhere
    scamdet::testing::SyntheticSpec spec;
    spec.n_messages = 60;
    spec.marker_noise = 0.0;
    const Corpus corpus = scamdet::testing::make_synthetic_corpus(spec);
    EnsembleTrainConfig config;
    config.hyperparams.rf.n_trees = 8;
    config.hyperparams.gbt.n_rounds = 12;
    const TrainedEnsemble ensemble = train_ensemble(corpus, config);

    auto stub = StubBackend::mapped({}, "yes");
    const Adjudicator adjudicator(stub);
    const auto traces = classify_batch(corpus, ensemble, adjudicator, 1);
    std::size_t escalated = 0;
    for (const auto& t : traces) {
        escalated += t.escalated ? 1 : 0;
    }
    // the ensemble fits its own noiseless training data; nothing escalates
    CHECK(escalated == 0);
    CHECK(stub->calls() == 0);
}

TEST_CASE("trace serialization carries the audit fields") {
    RoutingTrace trace;
    trace.id = "m1";
    trace.votes = EnsembleVotes{1, 0, 1, 0};
    trace.escalated = true;
    trace.adjudication = -1;
    trace.fallback_used = FallbackKind::knn_tiebreak;
    trace.final_label = 0;
    trace.timings.ensemble_s = 0.25;
    const std::string line = trace.to_json_line();
    CHECK(line.find("\"id\":\"m1\"") != std::string::npos);
    CHECK(line.find("\"fallback\":\"knn_tiebreak\"") != std::string::npos);
    CHECK(line.find("\"adjudication\":-1") != std::string::npos);
    CHECK(line.find("\"final\":0") != std::string::npos);
    CHECK(line.find('\n') == std::string::npos);
}
