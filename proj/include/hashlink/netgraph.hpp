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
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hashlink/common.hpp"
#include "hashlink/corpus.hpp"
#include "hashlink/graph.hpp"

namespace hashlink::netgraph {

enum class VertexKind : std::uint8_t { User, Hashtag };

struct Vertex {
    VertexKind kind = VertexKind::User;
    Platform platform = Platform::A;
    std::string label;

    /// "U:A:alice", "H:B:boston"
    std::string key() const;
    static Vertex parse(const std::string& key);
    auto operator<=>(const Vertex&) const = default;
};

enum class EdgeType : std::uint8_t { UserPost = 0, HashtagMention = 1, Repost = 2, CoOccurrence = 3 };
inline constexpr std::size_t kEdgeTypes = 4;

using EdgeCounts = std::array<std::uint64_t, kEdgeTypes>;

struct TypedEdge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    EdgeCounts counts{};
};

/// Sum over the four interaction counts.
std::uint64_t summed_weight(const TypedEdge& e);

enum class GraphTag : std::uint8_t { A, B, Joined };

/// Weighted undirected user/hashtag graph keeping one count per interaction
/// type. Vertex ids follow the order of Vertex keys; edges are stored with
/// u < v.
class ContentContextGraph {
public:
    explicit ContentContextGraph(GraphTag tag = GraphTag::A) : tag_(tag) {}

    GraphTag tag() const { return tag_; }

    std::uint32_t add_vertex(const Vertex& v);
    void add_count(std::uint32_t u, std::uint32_t v, EdgeType type, std::uint64_t n = 1);

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    const Vertex& vertex(std::uint32_t id) const { return vertices_[id]; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    std::optional<std::uint32_t> find(const Vertex& v) const;
    std::vector<TypedEdge> edges() const;
    EdgeCounts counts(std::uint32_t u, std::uint32_t v) const;

    /// Relabels vertices in key order so the result does not depend on insertion order.
    ContentContextGraph canonical() const;

    /// Adds every count of `other`, creating vertices as needed.
    void merge(const ContentContextGraph& other);

    /// Summed weights; vertex labels are Vertex keys and ids are preserved.
    graph::WeightedGraph to_weighted() const;

private:
    GraphTag tag_;
    std::vector<Vertex> vertices_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, EdgeCounts> edges_;
};

struct BuildDiagnostics {
    std::size_t posts = 0;
    std::size_t unresolved_reposts = 0;
    std::size_t self_interactions = 0;  // self-mentions and self-reposts, ignored
};

/// Per post by author u: user_post for u and each mentioned user; hashtag
/// mention for u and each distinct auto-hashtag token; repost for u and the
/// author of the reposted post; co-occurrence for each pair of distinct
/// auto-hashtag tokens and each pair of distinct mentioned users. All posts
/// must come from one platform.
ContentContextGraph build_graph(const corpus::Corpus& posts, const HashtagSet& auto_hashtags,
                                BuildDiagnostics* diagnostics = nullptr);

struct GraphStats {
    std::size_t users = 0;
    std::size_t hashtags = 0;
    EdgeCounts edges_with_type{};  // edges with a nonzero count of each type
    EdgeCounts total_counts{};
    std::array<std::size_t, 10> degree_deciles{};  // 10th..100th percentile
};

GraphStats graph_stats(const ContentContextGraph& g);
std::string format_stats(const GraphStats& s);

/// `kind:platform:label \t kind:platform:label \t user_post \t hashtag_mention \t repost \t co_occurrence`
void write_graph(const std::string& path, const ContentContextGraph& g);
ContentContextGraph read_graph(const std::string& path, GraphTag tag);

}  // namespace hashlink::netgraph
