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
#include <string>
#include <vector>

#include "hashlink/common.hpp"
#include "hashlink/corpus.hpp"
#include "hashlink/graph.hpp"
#include "hashlink/kernels.hpp"
#include "hashlink/topics.hpp"

namespace hashlink::wordgraph {

/// Vertices are the vocabulary words in vocabulary order; weight(u, v) is
/// the number of posts containing both words. Pairs seen in fewer than
/// `min_edge_count` posts are dropped.
graph::WeightedGraph build_cooccurrence_graph(const corpus::Corpus& corpus, const topics::Vocabulary& vocab,
                                              std::uint64_t min_edge_count);

/// Same, with every distinct token as a vertex.
graph::WeightedGraph build_cooccurrence_graph(const corpus::Corpus& corpus, std::uint64_t min_edge_count);

struct CommunityOptions {
    std::uint64_t seed = 0;
    std::size_t max_passes = 10;
    std::size_t trials = 8;
};

/// Two-level map equation on the undirected random walk. Isolated vertices
/// end up in singleton communities.
graph::Partition detect_communities_mapeq(const graph::WeightedGraph& g, const CommunityOptions& options);

struct PageRankOptions {
    double damping = 0.85;
    double tol = 1e-10;
    std::size_t max_iters = 200;
};

struct PageRankResult {
    std::vector<double> scores;
    std::size_t iterations = 0;
    bool converged = false;  // false: scores are the last iterate
};

/// Weighted PageRank by power iteration; dangling mass is spread uniformly.
PageRankResult pagerank(const graph::WeightedGraph& g, const PageRankOptions& options = {});
PageRankResult pagerank(const kernels::TransitionRows& rows, const PageRankOptions& options = {});

/// Weight-normalized transition rows of an undirected graph.
kernels::TransitionRows transition_rows(const graph::WeightedGraph& g);

enum class PageRankScope {
    InducedSubgraph,  // PageRank recomputed inside each community
    Global,           // one PageRank on the whole graph, ranked per community
};

/// Per community, the `words_per_community` highest-PageRank words (ties by
/// word); the union over communities.
HashtagSet annotate_community_hashtags(const graph::WeightedGraph& g, const graph::Partition& partition,
                                       std::size_t words_per_community,
                                       PageRankScope scope = PageRankScope::InducedSubgraph,
                                       const PageRankOptions& options = {});

/// Ranked words per community, reusable across several cut-offs.
std::vector<std::vector<std::string>> rank_community_words(const graph::WeightedGraph& g,
                                                           const graph::Partition& partition,
                                                           PageRankScope scope, const PageRankOptions& options);

HashtagSet take_top(const std::vector<std::vector<std::string>>& ranked, std::size_t per_group);

}  // namespace hashlink::wordgraph
