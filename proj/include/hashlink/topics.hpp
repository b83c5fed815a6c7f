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
#include <unordered_map>
#include <utility>
#include <vector>

#include "hashlink/common.hpp"
#include "hashlink/corpus.hpp"
#include "hashlink/kernels.hpp"

namespace hashlink::topics {

struct Vocabulary {
    std::vector<std::string> words;  // by (count desc, word asc)
    std::vector<std::uint64_t> counts;
    std::unordered_map<std::string, std::uint32_t> index;
    std::uint64_t min_count = 1;

    std::size_t size() const { return words.size(); }
    std::optional<std::uint32_t> find(const std::string& word) const;
};

/// Keeps words with at least `min_count` token occurrences. Throws
/// ConfigError when nothing survives.
Vocabulary build_vocabulary(const corpus::Corpus& corpus, std::uint64_t min_count);

/// One row per post (posts without in-vocabulary tokens give empty rows).
kernels::SparseCounts doc_term_counts(const corpus::Corpus& corpus, const Vocabulary& vocab);

struct PlsaOptions {
    std::size_t n_topics = 50;
    std::size_t max_iters = 200;
    double tol = 1e-5;
    std::uint64_t seed = 0;
    bool parallel = true;
};

struct PlsaModel {
    kernels::PlsaParams params;
    std::vector<double> loglik_trace;  // one entry per E-step, last entry is the returned model's
    std::size_t iterations = 0;
    bool converged = false;

    std::size_t n_topics() const { return params.n_topics; }
    double p_w_given_c(std::size_t topic, std::size_t word) const {
        return params.p_w_given_c[topic * params.n_words + word];
    }
};

/// EM for p(d,w) = sum_c p(c) p(w|c) p(d|c). Initial responsibilities
/// p(c|d,w) are a seeded random draw per (topic, word), so the fit does not
/// depend on document order. Stops after max_iters E-steps or when the
/// relative log-likelihood change drops below tol. Throws NumericalError
/// when the likelihood becomes non-finite.
PlsaModel fit_plsa(const kernels::SparseCounts& counts, const PlsaOptions& options);

using RankedWords = std::vector<std::pair<std::string, double>>;

/// Per topic, the `words_per_topic` most probable words (ties by word).
std::vector<RankedWords> top_words_per_topic(const PlsaModel& model, const Vocabulary& vocab,
                                             std::size_t words_per_topic);

HashtagSet annotate_topic_hashtags(const PlsaModel& model, const Vocabulary& vocab,
                                   std::size_t words_per_topic);

/// Text dump: counts, vocabulary, priors and row-major p(w|c) at full
/// precision. p(d|c) is not written.
void write_model(const std::string& path, const PlsaModel& model, const Vocabulary& vocab);

struct LoadedModel {
    PlsaModel model;
    Vocabulary vocab;
};
LoadedModel read_model(const std::string& path);

void write_hashtags(const std::string& path, const HashtagSet& tags);
HashtagSet read_hashtags(const std::string& path);

}  // namespace hashlink::topics
