/**
 * Copyright 2026 The hashlink Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hashlink/align.hpp"
#include "hashlink/forest.hpp"
#include "hashlink/graph.hpp"

namespace hashlink::resolve {

/// Candidate pair (platform-A user, platform-B user).
struct Trial {
    std::string user_a;
    std::string user_b;
    int label = 0;
    bool nontrivial = true;  // usernames differ

    static Trial make(std::string a, std::string b, int label);
};

struct ScoreVector {
    double jw = 0.0;
    double comm_sim = 0.0;
    double nbr_sim = 0.0;

    FeatureRow as_row() const { return {jw, comm_sim, nbr_sim}; }
};

/// Jaro similarity over bytes: match window floor(max(|s|,|t|)/2) - 1,
/// half the out-of-order matches count as transpositions.
double jaro(std::string_view s, std::string_view t);

/// Jaro plus the Winkler common-prefix boost (prefix up to 4, scale 0.1).
double jaro_winkler(std::string_view s, std::string_view t);

/// Everything score_trial reads. Platform graphs carry "U:A:<id>" /
/// "U:B:<id>" vertex labels; communities come from the joined graph.
struct ScoringContext {
    const graph::WeightedGraph* graph_a = nullptr;
    const graph::WeightedGraph* graph_b = nullptr;
    const align::JoinedGraph* joined = nullptr;
    std::vector<std::int32_t> community_a;  // per graph-A vertex
    std::vector<std::int32_t> community_b;
    std::size_t community_hops = 1;
    std::size_t walk_length = 1;
};

ScoringContext make_scoring_context(const graph::WeightedGraph& a, const graph::WeightedGraph& b,
                                    const align::JoinedGraph& joined, const graph::Partition& joined_partition,
                                    std::size_t community_hops, std::size_t walk_length = 1);

/// Graph scores are 0 for users missing from their graph.
ScoreVector score_trial(const Trial& trial, const ScoringContext& ctx);

/// Parallel over trials.
std::vector<ScoreVector> score_trials(const std::vector<Trial>& trials, const ScoringContext& ctx);

FusionModel train_fuser(std::span<const ScoreVector> scores, std::span<const Trial> trials,
                        const ForestOptions& options);
double predict(const FusionModel& model, const ScoreVector& score);

enum class TrialSubset : std::uint8_t { All, NonTrivial };

struct EerResult {
    double eer = 0.0;
    double threshold = 0.0;
    bool interpolated = false;
    std::size_t targets = 0;
    std::size_t nontargets = 0;
};

/// Miss rate = targets scoring below the threshold, false-alarm rate =
/// non-targets at or above it, swept over every distinct score. Linear
/// interpolation between adjacent operating points when the staircases do
/// not meet exactly. Throws ConfigError unless both labels are present.
EerResult compute_eer(std::span<const double> scores, std::span<const int> labels);
EerResult compute_eer(std::span<const double> scores, std::span<const Trial> trials, TrialSubset subset);

struct DetPoint {
    double threshold;
    double miss_rate;
    double fa_rate;
};
std::vector<DetPoint> det_curve(std::span<const double> scores, std::span<const int> labels);

struct TrialOptions {
    std::size_t negatives_per_positive = 10;
    double hard_fraction = 0.5;     // share of negatives drawn from high-jw pairs
    double hard_jw_min = 0.8;
    double train_fraction = 0.5;
    std::uint64_t seed = 0;
};

struct TrialSplit {
    std::vector<Trial> train;
    std::vector<Trial> test;
};

/// All true pairs as matches plus sampled non-matches (random pairs and
/// high-jw hard negatives), split by entity so no user appears on both sides.
TrialSplit make_trials(const std::vector<std::string>& users_a, const std::vector<std::string>& users_b,
                       const std::vector<std::pair<std::string, std::string>>& matches, const TrialOptions& options);

void write_trials(const std::string& path, const std::vector<Trial>& trials);
std::vector<Trial> read_trials(const std::string& path);

/// `user_A \t user_B \t label \t jw \t comm_sim \t nbr_sim [\t fused]`
void write_scores(const std::string& path, const std::vector<Trial>& trials, const std::vector<ScoreVector>& scores,
                  const std::vector<double>* fused = nullptr);
struct ScoredTrials {
    std::vector<Trial> trials;
    std::vector<ScoreVector> scores;
};
ScoredTrials read_scores(const std::string& path);

void write_det_csv(const std::string& path, const std::vector<DetPoint>& det);
std::string format_eer(const std::string& system, const EerResult& all, const EerResult& nontrivial);

}  // namespace hashlink::resolve
