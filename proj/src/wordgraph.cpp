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
#include "hashlink/wordgraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

#include "hashlink/mapequation.hpp"

namespace hashlink::wordgraph {

graph::WeightedGraph build_cooccurrence_graph(const corpus::Corpus& corpus, const topics::Vocabulary& vocab,
                                              std::uint64_t min_edge_count) {
    graph::WeightedGraph g;
    for (const auto& w : vocab.words) g.add_vertex(w);

    std::vector<std::vector<std::uint32_t>> posts;
    posts.reserve(corpus.size());
    for (const auto& post : corpus) {
        std::vector<std::uint32_t> ids;
        for (const auto& tok : post.tokens) {
            if (auto id = vocab.find(tok)) ids.push_back(*id);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (ids.size() >= 2) posts.push_back(std::move(ids));
    }
    for (const auto& [u, v, count] : kernels::cooccurrence_counts(posts)) {
        if (count >= std::max<std::uint64_t>(min_edge_count, 1)) g.add_edge(u, v, static_cast<double>(count));
    }
    return g;
}

graph::WeightedGraph build_cooccurrence_graph(const corpus::Corpus& corpus, std::uint64_t min_edge_count) {
    bool any = std::any_of(corpus.begin(), corpus.end(), [](const auto& p) { return !p.tokens.empty(); });
    if (!any) return graph::WeightedGraph{};
    return build_cooccurrence_graph(corpus, topics::build_vocabulary(corpus, 1), min_edge_count);
}

graph::Partition detect_communities_mapeq(const graph::WeightedGraph& g, const CommunityOptions& options) {
    if (g.num_vertices() == 0) return {};
    graph::MapEquationOptions opt;
    opt.seed = options.seed;
    opt.max_passes = options.max_passes;
    opt.trials = options.trials;
    const auto result = graph::optimize_map_equation(graph::flow_from_undirected(g), opt);
    return graph::Partition::from_labels(result.membership);
}

kernels::TransitionRows transition_rows(const graph::WeightedGraph& g) {
    kernels::TransitionRows rows;
    rows.n = g.num_vertices();
    rows.offsets.reserve(rows.n + 1);
    for (std::uint32_t u = 0; u < rows.n; ++u) {
        const double s = g.strength(u);
        for (const auto& [v, w] : g.neighbors(u)) {
            rows.targets.push_back(v);
            rows.probs.push_back(w / s);
        }
        rows.offsets.push_back(rows.targets.size());
    }
    return rows;
}

PageRankResult pagerank(const kernels::TransitionRows& rows, const PageRankOptions& options) {
    PageRankResult result;
    const std::size_t n = rows.n;
    if (n == 0) return result;
    const kernels::IncomingRows in = kernels::IncomingRows::build(rows);
    std::vector<double> s(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    for (std::size_t it = 1; it <= options.max_iters; ++it) {
        kernels::pagerank_step(in, s, options.damping, next);
        double diff = 0.0;
        for (std::size_t v = 0; v < n; ++v) diff += std::abs(next[v] - s[v]);
        std::swap(s, next);
        result.iterations = it;
        if (diff < options.tol) {
            result.converged = true;
            break;
        }
    }
    if (!result.converged) {
        spdlog::warn("pagerank: no convergence after {} iterations (tol {})", options.max_iters, options.tol);
    }
    const double total = std::accumulate(s.begin(), s.end(), 0.0);
    for (auto& x : s) x /= total;
    result.scores = std::move(s);
    return result;
}

PageRankResult pagerank(const graph::WeightedGraph& g, const PageRankOptions& options) {
    return pagerank(transition_rows(g), options);
}

namespace {

// Scores equal up to rounding noise rank as ties.
std::int64_t rank_key(double score) { return std::llround(score * 1e12); }

std::vector<std::string> rank_by_score(const graph::WeightedGraph& g, const std::vector<std::uint32_t>& vertices,
                                       const std::vector<double>& score_of) {
    std::vector<std::size_t> order(vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto ka = rank_key(score_of[a]);
        const auto kb = rank_key(score_of[b]);
        if (ka != kb) return ka > kb;
        return g.label(vertices[a]) < g.label(vertices[b]);
    });
    std::vector<std::string> out;
    out.reserve(order.size());
    for (auto i : order) out.push_back(g.label(vertices[i]));
    return out;
}

}  // namespace

std::vector<std::vector<std::string>> rank_community_words(const graph::WeightedGraph& g,
                                                           const graph::Partition& partition,
                                                           PageRankScope scope, const PageRankOptions& options) {
    std::vector<std::vector<std::string>> ranked;
    const auto members = partition.members();
    std::vector<double> global;
    if (scope == PageRankScope::Global) global = pagerank(g, options).scores;
    for (const auto& community : members) {
        std::vector<double> scores(community.size());
        if (scope == PageRankScope::Global) {
            for (std::size_t i = 0; i < community.size(); ++i) scores[i] = global[community[i]];
        } else {
            scores = pagerank(g.induced(community), options).scores;
        }
        ranked.push_back(rank_by_score(g, community, scores));
    }
    return ranked;
}

HashtagSet take_top(const std::vector<std::vector<std::string>>& ranked, std::size_t per_group) {
    HashtagSet tags;
    for (const auto& words : ranked) {
        for (std::size_t i = 0; i < std::min(per_group, words.size()); ++i) tags.insert(words[i]);
    }
    return tags;
}

HashtagSet annotate_community_hashtags(const graph::WeightedGraph& g, const graph::Partition& partition,
                                       std::size_t words_per_community, PageRankScope scope,
                                       const PageRankOptions& options) {
    return take_top(rank_community_words(g, partition, scope, options), words_per_community);
}

}  // namespace hashlink::wordgraph
