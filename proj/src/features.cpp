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
#include "hashlink/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "hashlink/common.hpp"

namespace hashlink::features {

std::vector<std::uint32_t> khop_neighbors(const graph::WeightedGraph& g, std::uint32_t vertex, std::size_t k) {
    if (vertex >= g.num_vertices()) throw DataError("vertex " + std::to_string(vertex) + " not in graph");
    if (k == 0) throw ConfigError("hop count must be at least 1");
    constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(g.num_vertices(), kUnseen);
    std::vector<std::uint32_t> frontier{vertex};
    dist[vertex] = 0;
    for (std::size_t hop = 1; hop <= k && !frontier.empty(); ++hop) {
        std::vector<std::uint32_t> next;
        for (auto u : frontier) {
            for (const auto& [v, w] : g.neighbors(u)) {
                if (dist[v] == kUnseen) {
                    dist[v] = hop;
                    next.push_back(v);
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<std::uint32_t> out;
    for (auto v : frontier) {
        if (dist[v] == k) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t CommunityCountVector::total() const {
    std::uint64_t t = 0;
    for (const auto& [c, n] : counts) t += n;
    return t;
}

SparseVector CommunityCountVector::as_sparse() const {
    SparseVector v;
    v.reserve(counts.size());
    for (const auto& [c, n] : counts) v.emplace_back(static_cast<std::uint32_t>(c), static_cast<double>(n));
    return v;
}

CommunityCountVector community_feature(const graph::WeightedGraph& g, std::span<const std::int32_t> community_of,
                                       std::uint32_t vertex, std::size_t k) {
    CommunityCountVector c;
    c.owner = vertex;
    c.k = k;
    for (auto n : khop_neighbors(g, vertex, k)) {
        if (community_of[n] != graph::kUnassigned) ++c.counts[community_of[n]];
    }
    return c;
}

double cosine_similarity(const SparseVector& x, const SparseVector& y) {
    double dot = 0.0;
    double nx = 0.0;
    double ny = 0.0;
    for (const auto& [i, v] : x) nx += v * v;
    for (const auto& [i, v] : y) ny += v * v;
    if (nx == 0.0 || ny == 0.0) return 0.0;
    auto a = x.begin();
    auto b = y.begin();
    while (a != x.end() && b != y.end()) {
        if (a->first < b->first) {
            ++a;
        } else if (b->first < a->first) {
            ++b;
        } else {
            dot += a->second * b->second;
            ++a;
            ++b;
        }
    }
    return std::clamp(dot / (std::sqrt(nx) * std::sqrt(ny)), 0.0, 1.0);
}

double cosine_similarity(const CommunityCountVector& x, const CommunityCountVector& y) {
    return cosine_similarity(x.as_sparse(), y.as_sparse());
}

NeighborhoodProbVector neighborhood_feature(const align::JoinedGraph& joined, std::uint32_t vertex, std::size_t k) {
    if (vertex >= joined.size()) throw DataError("vertex " + std::to_string(vertex) + " not in joined graph");
    if (k == 0) throw ConfigError("walk length must be at least 1");
    const auto& rows = joined.rows;
    NeighborhoodProbVector out;
    out.owner = vertex;
    out.k = k;
    if (rows.offsets[vertex] == rows.offsets[vertex + 1]) return out;

    std::map<std::uint32_t, double> current{{vertex, 1.0}};
    for (std::size_t step = 0; step < k; ++step) {
        std::map<std::uint32_t, double> next;
        for (const auto& [u, mass] : current) {
            for (std::size_t e = rows.offsets[u]; e < rows.offsets[u + 1]; ++e) next[rows.targets[e]] += mass * rows.probs[e];
        }
        current = std::move(next);
    }
    out.probs.assign(current.begin(), current.end());
    return out;
}

double neighborhood_similarity(const NeighborhoodProbVector& a, const NeighborhoodProbVector& b) {
    return cosine_similarity(a.probs, b.probs);
}

void write_feature_dump(const std::string& path, const std::vector<std::pair<std::string, SparseVector>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (const auto& [label, vec] : rows) {
        out << label << '\t';
        for (std::size_t i = 0; i < vec.size(); ++i) {
            out << (i ? " " : "") << vec[i].first << ':' << graph::format_double(vec[i].second);
        }
        out << '\n';
    }
}

}  // namespace hashlink::features
