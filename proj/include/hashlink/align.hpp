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
#include <vector>

#include "hashlink/graph.hpp"
#include "hashlink/kernels.hpp"
#include "hashlink/mapequation.hpp"
#include "hashlink/netgraph.hpp"

namespace hashlink::align {

struct SeedPair {
    std::uint32_t a;     // vertex id in graph A
    std::uint32_t b;     // vertex id in graph B
    std::string label;  // label of the fused vertex
};

enum class SeedDerivation : std::uint8_t { CommonHashtags, ExplicitList };

struct SeedSet {
    std::vector<SeedPair> pairs;
    SeedDerivation derivation = SeedDerivation::ExplicitList;

    std::size_t size() const { return pairs.size(); }
};

/// One pair per hashtag word present in both graphs, sorted by word. The
/// fused label is "H:AB:<word>". Throws DataError when there is none.
SeedSet find_seeds(const netgraph::ContentContextGraph& a, const netgraph::ContentContextGraph& b);

/// P(u -> v) = w(u, v) / sum_x w(u, x). Isolated vertices get empty rows.
kernels::TransitionRows to_markov(const graph::WeightedGraph& g);

/// Seed-aggregated union of two graphs. Row u of `rows` is the random-walk
/// out-distribution of joined vertex u.
struct JoinedGraph {
    std::vector<std::string> labels;
    kernels::TransitionRows rows;
    std::vector<std::uint32_t> from_a;  // graph-A vertex -> joined vertex
    std::vector<std::uint32_t> from_b;
    std::unordered_map<std::string, std::uint32_t> index;

    std::size_t size() const { return labels.size(); }
    std::optional<std::uint32_t> find(const std::string& label) const;
};

/// Vertices: A's vertices in order (seeds fused in place), then B's
/// non-seed vertices. A fused row is p * (A-side row) + (1 - p) * (B-side
/// row); when one side is isolated the other side's row is taken whole.
JoinedGraph aggregate_merge(const graph::WeightedGraph& a, const graph::WeightedGraph& b, const SeedSet& seeds,
                            double p = 0.5);

/// Disjoint union plus one edge of `link_weight` per seed pair. Vertex ids:
/// A's, then B's shifted by |V_A|.
graph::WeightedGraph link_merge(const graph::WeightedGraph& a, const graph::WeightedGraph& b, const SeedSet& seeds,
                                double link_weight);

/// Largest weakly connected component (sorted ids). Ties go to the
/// component holding the lexicographically smallest label.
std::vector<std::uint32_t> largest_connected_component(const JoinedGraph& joined);

struct CrossCommunityOptions {
    std::uint64_t seed = 0;
    double damping = 0.85;
    std::size_t max_passes = 10;
    std::size_t trials = 8;
};

struct CrossCommunities {
    graph::Partition partition;  // over joined vertices; kUnassigned outside the component
    std::vector<std::uint32_t> component;
    double code_length = 0.0;
};

/// Map-equation communities of the directed walk restricted to the largest
/// connected component.
CrossCommunities detect_cross_communities(const JoinedGraph& joined, const CrossCommunityOptions& options = {});

/// `src \t dst \t probability`
void write_joined(const std::string& path, const JoinedGraph& joined);
/// Rebuilds vertex maps against the two platform graphs and seeds the joined graph was made from.
JoinedGraph read_joined(const std::string& path, const graph::WeightedGraph& a, const graph::WeightedGraph& b,
                        const SeedSet& seeds);

/// `fused_label \t a_label \t b_label`
void write_seed_manifest(const std::string& path, const SeedSet& seeds, const graph::WeightedGraph& a,
                         const graph::WeightedGraph& b);
SeedSet read_seed_manifest(const std::string& path, const graph::WeightedGraph& a, const graph::WeightedGraph& b);

}  // namespace hashlink::align
