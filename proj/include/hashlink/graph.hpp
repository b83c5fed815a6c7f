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
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hashlink::graph {

struct Edge {
    std::uint32_t u;
    std::uint32_t v;
    double weight;
};

/// Undirected graph with positive edge weights and string-labelled vertices.
/// Adding an existing edge accumulates its weight.
class WeightedGraph {
public:
    explicit WeightedGraph(bool allow_self_loops = false) : allow_self_loops_(allow_self_loops) {}

    /// Returns the existing id when the label is already present.
    std::uint32_t add_vertex(const std::string& label);
    void add_edge(std::uint32_t u, std::uint32_t v, double weight);

    std::size_t num_vertices() const { return labels_.size(); }
    std::size_t num_edges() const { return n_edges_; }

    std::optional<std::uint32_t> find(std::string_view label) const;
    const std::string& label(std::uint32_t v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }

    const std::map<std::uint32_t, double>& neighbors(std::uint32_t v) const { return adj_[v]; }
    double weight(std::uint32_t u, std::uint32_t v) const;
    double strength(std::uint32_t v) const;
    std::size_t degree(std::uint32_t v) const { return adj_[v].size(); }

    /// Each undirected edge once with u <= v, sorted.
    std::vector<Edge> edges() const;

    /// Subgraph induced by `vertices` (ids in the given order).
    WeightedGraph induced(const std::vector<std::uint32_t>& vertices) const;

private:
    bool allow_self_loops_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::vector<std::map<std::uint32_t, double>> adj_;
    std::size_t n_edges_ = 0;
};

inline constexpr std::int32_t kUnassigned = -1;

/// Vertex -> community assignment. Community ids are dense and numbered by
/// first appearance in vertex order; kUnassigned marks vertices outside the
/// detected region.
struct Partition {
    std::vector<std::int32_t> membership;
    std::size_t n_communities = 0;

    /// Relabels arbitrary non-negative ids densely by first appearance.
    static Partition from_labels(const std::vector<std::int32_t>& labels);

    std::vector<std::vector<std::uint32_t>> members() const;
};

/// `label1 \t label2 \t weight`
void write_edge_list(const std::string& path, const WeightedGraph& g);
WeightedGraph read_edge_list(const std::string& path);

/// `label \t community_id`, with "-" for unassigned vertices.
void write_partition(const std::string& path, const std::vector<std::string>& labels, const Partition& p);
/// Assignments are matched to `labels`; labels missing from the file are unassigned.
Partition read_partition(const std::string& path, const std::vector<std::string>& labels);

std::string format_double(double x);

}  // namespace hashlink::graph
