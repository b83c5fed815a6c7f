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
#include "hashlink/netgraph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace hashlink::netgraph {

std::string Vertex::key() const {
    return std::string(1, kind == VertexKind::User ? 'U' : 'H') + ':' + platform_code(platform) + ':' + label;
}

Vertex Vertex::parse(const std::string& key) {
    if (key.size() < 5 || key[1] != ':' || key[3] != ':' || (key[0] != 'U' && key[0] != 'H')) {
        throw DataError("bad vertex key '" + key + "'");
    }
    Vertex v;
    v.kind = key[0] == 'U' ? VertexKind::User : VertexKind::Hashtag;
    v.platform = parse_platform(key.substr(2, 1));
    v.label = key.substr(4);
    return v;
}

std::uint64_t summed_weight(const TypedEdge& e) { return std::accumulate(e.counts.begin(), e.counts.end(), std::uint64_t{0}); }

std::uint32_t ContentContextGraph::add_vertex(const Vertex& v) {
    auto [it, inserted] = index_.emplace(v.key(), static_cast<std::uint32_t>(vertices_.size()));
    if (inserted) vertices_.push_back(v);
    return it->second;
}

void ContentContextGraph::add_count(std::uint32_t u, std::uint32_t v, EdgeType type, std::uint64_t n) {
    if (u == v) throw std::invalid_argument("typed edge endpoints must differ");
    if (n == 0) return;
    if (u > v) std::swap(u, v);
    edges_[{u, v}][static_cast<std::size_t>(type)] += n;
}

std::optional<std::uint32_t> ContentContextGraph::find(const Vertex& v) const {
    auto it = index_.find(v.key());
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<TypedEdge> ContentContextGraph::edges() const {
    std::vector<TypedEdge> out;
    out.reserve(edges_.size());
    for (const auto& [uv, c] : edges_) out.push_back({uv.first, uv.second, c});
    return out;
}

EdgeCounts ContentContextGraph::counts(std::uint32_t u, std::uint32_t v) const {
    if (u > v) std::swap(u, v);
    auto it = edges_.find({u, v});
    return it == edges_.end() ? EdgeCounts{} : it->second;
}

ContentContextGraph ContentContextGraph::canonical() const {
    std::vector<std::uint32_t> order(vertices_.size());
    std::iota(order.begin(), order.end(), 0U);
    std::vector<std::string> keys(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) keys[i] = vertices_[i].key();
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return keys[a] < keys[b]; });
    ContentContextGraph out(tag_);
    std::vector<std::uint32_t> remap(vertices_.size());
    for (auto old_id : order) remap[old_id] = out.add_vertex(vertices_[old_id]);
    for (const auto& [uv, c] : edges_) {
        auto a = remap[uv.first];
        auto b = remap[uv.second];
        if (a > b) std::swap(a, b);
        out.edges_[{a, b}] = c;
    }
    return out;
}

void ContentContextGraph::merge(const ContentContextGraph& other) {
    for (const auto& [uv, c] : other.edges_) {
        const auto a = add_vertex(other.vertices_[uv.first]);
        const auto b = add_vertex(other.vertices_[uv.second]);
        for (std::size_t t = 0; t < kEdgeTypes; ++t) add_count(a, b, static_cast<EdgeType>(t), c[t]);
    }
}

graph::WeightedGraph ContentContextGraph::to_weighted() const {
    graph::WeightedGraph g;
    for (const auto& v : vertices_) g.add_vertex(v.key());
    for (const auto& [uv, c] : edges_) {
        g.add_edge(uv.first, uv.second, static_cast<double>(std::accumulate(c.begin(), c.end(), std::uint64_t{0})));
    }
    return g;
}

ContentContextGraph build_graph(const corpus::Corpus& posts, const HashtagSet& auto_hashtags,
                                BuildDiagnostics* diagnostics) {
    BuildDiagnostics diag;
    if (posts.empty()) return ContentContextGraph{};
    const Platform platform = posts.front().platform;
    std::unordered_map<std::string, const std::string*> author_of;
    for (const auto& p : posts) {
        if (p.platform != platform) throw DataError("build_graph: corpus mixes platforms");
        author_of.emplace(p.post_id, &p.author);
    }

    ContentContextGraph g(platform == Platform::A ? GraphTag::A : GraphTag::B);
    auto user = [&](const std::string& id) { return g.add_vertex({VertexKind::User, platform, id}); };
    auto hashtag = [&](const std::string& w) { return g.add_vertex({VertexKind::Hashtag, platform, w}); };

    for (const auto& p : posts) {
        ++diag.posts;
        std::set<std::string> mentioned;
        for (const auto& m : p.mentioned_users) {
            if (m == p.author) {
                ++diag.self_interactions;
            } else {
                mentioned.insert(m);
            }
        }
        std::set<std::string> tags;
        for (const auto& tok : p.tokens) {
            if (auto_hashtags.contains(tok)) tags.insert(tok);
        }
        if (mentioned.empty() && tags.empty() && !p.repost_of) continue;

        const auto author = user(p.author);
        for (const auto& m : mentioned) g.add_count(author, user(m), EdgeType::UserPost);
        for (const auto& t : tags) g.add_count(author, hashtag(t), EdgeType::HashtagMention);
        if (p.repost_of) {
            auto it = author_of.find(*p.repost_of);
            if (it == author_of.end()) {
                ++diag.unresolved_reposts;
            } else if (*it->second == p.author) {
                ++diag.self_interactions;
            } else {
                g.add_count(author, user(*it->second), EdgeType::Repost);
            }
        }
        for (auto i = tags.begin(); i != tags.end(); ++i) {
            for (auto j = std::next(i); j != tags.end(); ++j) g.add_count(hashtag(*i), hashtag(*j), EdgeType::CoOccurrence);
        }
        for (auto i = mentioned.begin(); i != mentioned.end(); ++i) {
            for (auto j = std::next(i); j != mentioned.end(); ++j) g.add_count(user(*i), user(*j), EdgeType::CoOccurrence);
        }
    }
    if (diagnostics) *diagnostics = diag;
    return g.canonical();
}

GraphStats graph_stats(const ContentContextGraph& g) {
    GraphStats s;
    for (const auto& v : g.vertices()) (v.kind == VertexKind::User ? s.users : s.hashtags)++;
    std::vector<std::size_t> degree(g.num_vertices(), 0);
    for (const auto& e : g.edges()) {
        ++degree[e.u];
        ++degree[e.v];
        for (std::size_t t = 0; t < kEdgeTypes; ++t) {
            if (e.counts[t] > 0) ++s.edges_with_type[t];
            s.total_counts[t] += e.counts[t];
        }
    }
    std::sort(degree.begin(), degree.end());
    if (!degree.empty()) {
        for (std::size_t d = 0; d < 10; ++d) {
            // nearest-rank percentile
            const std::size_t rank = ((d + 1) * degree.size() + 9) / 10;
            s.degree_deciles[d] = degree[std::max<std::size_t>(rank, 1) - 1];
        }
    }
    return s;
}

std::string format_stats(const GraphStats& s) {
    static constexpr std::array<const char*, kEdgeTypes> kNames = {"user_post", "hashtag_mention", "repost",
                                                                   "co_occurrence"};
    std::string out = fmt::format("users {}\nhashtags {}\n", s.users, s.hashtags);
    for (std::size_t t = 0; t < kEdgeTypes; ++t) {
        out += fmt::format("edges.{} {}\ncounts.{} {}\n", kNames[t], s.edges_with_type[t], kNames[t], s.total_counts[t]);
    }
    out += "degree_deciles";
    for (auto d : s.degree_deciles) out += fmt::format(" {}", d);
    out += '\n';
    return out;
}

void write_graph(const std::string& path, const ContentContextGraph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (const auto& e : g.edges()) {
        out << g.vertex(e.u).key() << '\t' << g.vertex(e.v).key();
        for (auto c : e.counts) out << '\t' << c;
        out << '\n';
    }
}

ContentContextGraph read_graph(const std::string& path, GraphTag tag) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open graph '" + path + "'");
    ContentContextGraph g(tag);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) f.push_back(field);
        if (f.size() != 2 + kEdgeTypes) throw DataError(fmt::format("{}:{}: expected 6 fields", path, line_no));
        try {
            const auto u = g.add_vertex(Vertex::parse(f[0]));
            const auto v = g.add_vertex(Vertex::parse(f[1]));
            for (std::size_t t = 0; t < kEdgeTypes; ++t) {
                g.add_count(u, v, static_cast<EdgeType>(t), std::stoull(f[2 + t]));
            }
        } catch (const std::exception& e) {
            throw DataError(fmt::format("{}:{}: {}", path, line_no, e.what()));
        }
    }
    return g.canonical();
}

}  // namespace hashlink::netgraph
