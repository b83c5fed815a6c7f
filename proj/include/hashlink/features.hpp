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
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hashlink/align.hpp"
#include "hashlink/graph.hpp"

namespace hashlink::features {

/// Sorted by index, no duplicate indices.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

/// Vertices at shortest-path distance exactly k from `vertex` (k >= 1),
/// sorted. Throws DataError when `vertex` is not in the graph.
std::vector<std::uint32_t> khop_neighbors(const graph::WeightedGraph& g, std::uint32_t vertex, std::size_t k);

/// c_i = |{N : comm(N) = i, N a k-hop neighbor of the owner}|.
struct CommunityCountVector {
    std::uint32_t owner = 0;
    std::size_t k = 1;
    std::map<std::int32_t, std::uint64_t> counts;

    std::uint64_t total() const;
    SparseVector as_sparse() const;
};

/// `community_of` is indexed by vertex of `g`; kUnassigned neighbors are
/// not counted.
CommunityCountVector community_feature(const graph::WeightedGraph& g, std::span<const std::int32_t> community_of,
                                       std::uint32_t vertex, std::size_t k);

/// x.y / (|x| |y|); 0 when either vector is zero.
double cosine_similarity(const SparseVector& x, const SparseVector& y);
double cosine_similarity(const CommunityCountVector& x, const CommunityCountVector& y);

struct NeighborhoodProbVector {
    std::uint32_t owner = 0;
    std::size_t k = 1;
    SparseVector probs;  // empty for an isolated owner
};

/// Row `vertex` of P^k, by k sparse vector-matrix products.
NeighborhoodProbVector neighborhood_feature(const align::JoinedGraph& joined, std::uint32_t vertex, std::size_t k = 1);

double neighborhood_similarity(const NeighborhoodProbVector& a, const NeighborhoodProbVector& b);

/// One line per vector: `label \t index:value index:value ...`
void write_feature_dump(const std::string& path, const std::vector<std::pair<std::string, SparseVector>>& rows);

}  // namespace hashlink::features
