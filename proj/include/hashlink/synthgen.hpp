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

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hashlink/corpus.hpp"

namespace hashlink::synthgen {

struct SynthConfig {
    std::uint64_t seed = 0;
    std::size_t n_entities = 1000;
    double cross_platform_fraction = 0.4;
    std::size_t n_topics_true = 20;
    std::size_t vocab_size = 2000;
    std::size_t posts_per_user_min = 5;
    std::size_t posts_per_user_max = 15;
    std::size_t words_per_post_min = 6;
    std::size_t words_per_post_max = 14;
    double hashtag_rate = 0.15;
    double mention_rate = 0.3;
    double repost_rate = 0.1;
    double username_perturbation_rate = 0.3;
    double neighbor_overlap = 0.8;
    double collision_rate = 0.03;       // single-platform accounts reusing another's name
    std::size_t name_pool = 20;         // given and family name stems each
    double core_fraction = 0.8;         // share of the vocabulary split into topic cores
    double background_rate = 0.15;      // per-token chance of a background word
    double primary_topic_weight = 0.7;
    std::size_t friends_min = 4;
    std::size_t friends_max = 10;
    double noise_rate = 0.05;           // URLs, emoji, emoticons

    /// Throws ConfigError on out-of-range or infeasible settings.
    void validate() const;
};

struct TruePair {
    std::string user_a;
    std::string user_b;
    bool nontrivial = false;
};

struct GroundTruth {
    std::vector<TruePair> pairs;
    std::vector<std::vector<double>> mixtures;          // per entity, over true topics
    std::vector<std::vector<std::string>> topic_cores;  // per true topic
    std::vector<std::string> users_a;
    std::vector<std::string> users_b;
};

struct SynthOutput {
    std::vector<corpus::RawPost> corpus_a;
    std::vector<corpus::RawPost> corpus_b;
    GroundTruth truth;
};

SynthOutput generate(const SynthConfig& config);

/// corpus_a.jsonl, corpus_b.jsonl and ground_truth.tsv under `dir`.
void write_output(const std::string& dir, const SynthOutput& out);

/// `user_A \t user_B \t nontrivial(0|1)` per line.
void write_ground_truth(const std::string& path, const GroundTruth& truth);
std::vector<TruePair> read_ground_truth(const std::string& path);

}  // namespace hashlink::synthgen
