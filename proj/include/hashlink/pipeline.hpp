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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hashlink/align.hpp"
#include "hashlink/forest.hpp"
#include "hashlink/resolve.hpp"
#include "hashlink/synthgen.hpp"
#include "hashlink/topics.hpp"
#include "hashlink/wordgraph.hpp"

namespace hashlink::pipeline {

enum class Annotator : std::uint8_t { Topic, Community };

const char* annotator_name(Annotator a);
Annotator parse_annotator(const std::string& s);

struct PipelineConfig {
    // [paths]; empty corpus paths mean the synth outputs under out_dir.
    std::string corpus_a;
    std::string corpus_b;
    std::string ground_truth;
    std::string stopwords;
    std::string out_dir = "out";

    // [pipeline]
    std::uint64_t seed = 1;
    Annotator annotator = Annotator::Topic;

    synthgen::SynthConfig synth;

    // [topics]
    topics::PlsaOptions plsa;
    std::uint64_t topic_min_count = 5;
    std::size_t words_per_topic = 80;

    // [wordgraph]
    std::uint64_t word_min_count = 5;
    std::uint64_t min_edge_count = 2;
    std::size_t words_per_community = 10;
    wordgraph::PageRankScope pagerank_scope = wordgraph::PageRankScope::InducedSubgraph;
    wordgraph::PageRankOptions pagerank;
    std::size_t community_passes = 10;
    std::size_t community_trials = 8;

    // [align]
    double aggregation_p = 0.5;
    double align_damping = 0.85;
    std::size_t align_passes = 10;
    std::size_t align_trials = 8;

    // [features]
    std::size_t community_hops = 1;
    std::size_t walk_length = 1;

    // [trials], [forest]
    resolve::TrialOptions trials;
    resolve::ForestOptions forest;

    // [hashtageval]
    std::vector<std::size_t> M_values = {500, 1000, 2000, 5000};
    std::vector<std::size_t> K_schedule = {1, 2, 5, 10, 20, 40, 80};

    /// Applies one `section.key=value` setting. Throws ConfigError on an
    /// unknown key or a malformed value.
    void set(const std::string& dotted_key, const std::string& value);

    /// Reads an INI file (sections per module) on top of the defaults.
    static PipelineConfig load(const std::string& path);

    /// Every key with its current value, in INI form.
    std::string dump() const;

    std::string corpus_a_path() const;
    std::string corpus_b_path() const;
    std::string ground_truth_path() const;
    std::string artifact(const std::string& name) const;
};

struct EvalReport {
    resolve::EerResult jw_all, fused_all;
    std::optional<resolve::EerResult> jw_nt, fused_nt;  // empty when NT lacks a class
};

void run_synth(const PipelineConfig& cfg);
void run_preprocess(const PipelineConfig& cfg);
void run_annotate(const PipelineConfig& cfg);
void run_build_graph(const PipelineConfig& cfg);
void run_align(const PipelineConfig& cfg);
void run_score(const PipelineConfig& cfg);
void run_train(const PipelineConfig& cfg);
EvalReport run_eval_er(const PipelineConfig& cfg);
void run_eval_hashtags(const PipelineConfig& cfg);

/// Runs synth (when no corpus paths are configured) and every later stage.
EvalReport run_all(const PipelineConfig& cfg);

}  // namespace hashlink::pipeline
