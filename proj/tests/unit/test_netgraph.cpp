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
#include <algorithm>
#include <random>

#include "doctest.h"
#include "hashlink/netgraph.hpp"
#include "oracles.hpp"

using namespace hashlink;
using namespace hashlink::netgraph;

namespace {

corpus::ProcessedPost post(std::string id, std::string author, std::vector<std::string> tokens,
                           std::vector<std::string> mentions = {}, std::optional<std::string> repost = {}) {
    corpus::ProcessedPost p;
    p.post_id = std::move(id);
    p.author = std::move(author);
    p.tokens = std::move(tokens);
    p.mentioned_users = std::move(mentions);
    p.repost_of = std::move(repost);
    return p;
}

Vertex user(std::string l) { return {VertexKind::User, Platform::A, std::move(l)}; }
Vertex tag(std::string l) { return {VertexKind::Hashtag, Platform::A, std::move(l)}; }

EdgeCounts counts_of(const ContentContextGraph& g, const Vertex& x, const Vertex& y) {
    auto u = g.find(x);
    auto v = g.find(y);
    REQUIRE(u);
    REQUIRE(v);
    return g.counts(*u, *v);
}

corpus::Corpus random_corpus(std::mt19937_64& rng, std::size_t n) {
    corpus::Corpus c;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> tokens;
        for (int j = 0; j < 5; ++j) tokens.push_back("w" + std::to_string(rng() % 15));
        std::vector<std::string> mentions;
        if (rng() % 3 == 0) mentions.push_back("u" + std::to_string(rng() % 10));
        if (rng() % 5 == 0) mentions.push_back("u" + std::to_string(rng() % 10));
        std::optional<std::string> repost;
        if (i > 0 && rng() % 6 == 0) repost = "p" + std::to_string(rng() % i);
        c.push_back(post("p" + std::to_string(i), "u" + std::to_string(rng() % 10), tokens, mentions, repost));
    }
    return c;
}

const HashtagSet kTags = {"w0", "w1", "w2", "w3", "w4", "w5", "w6"};

bool same_graph(const ContentContextGraph& x, const ContentContextGraph& y) {
    const auto a = x.canonical();
    const auto b = y.canonical();
    if (a.vertices() != b.vertices()) return false;
    const auto ea = a.edges();
    const auto eb = b.edges();
    if (ea.size() != eb.size()) return false;
    for (std::size_t i = 0; i < ea.size(); ++i)
        if (ea[i].u != eb[i].u || ea[i].v != eb[i].v || ea[i].counts != eb[i].counts) return false;
    return true;
}

}  // namespace

TEST_CASE("single post applies every interaction rule") {
    const corpus::Corpus c = {post("p1", "u1", {"boston", "job"}, {"u2"})};
    const auto g = build_graph(c, {"boston", "job", "food"});
    CHECK(g.num_vertices() == 4);
    CHECK(g.num_edges() == 4);
    CHECK(counts_of(g, user("u1"), user("u2")) == EdgeCounts{1, 0, 0, 0});
    CHECK(counts_of(g, user("u1"), tag("boston")) == EdgeCounts{0, 1, 0, 0});
    CHECK(counts_of(g, user("u1"), tag("job")) == EdgeCounts{0, 1, 0, 0});
    CHECK(counts_of(g, tag("boston"), tag("job")) == EdgeCounts{0, 0, 0, 1});
    CHECK_FALSE(g.find(tag("food")));
}

TEST_CASE("doubling a post doubles every count") {
    const corpus::Corpus c = {post("p1", "u1", {"boston", "job"}, {"u2"}),
                              post("p2", "u1", {"boston", "job"}, {"u2"})};
    const auto g = build_graph(c, {"boston", "job"});
    CHECK(g.num_edges() == 4);
    for (const auto& e : g.edges()) CHECK(summed_weight(e) == 2);
}

TEST_CASE("post without hashtags or mentions contributes nothing") {
    const corpus::Corpus c = {post("p1", "u1", {"boston"}), post("p2", "u3", {"weather", "rain"})};
    const auto g = build_graph(c, {"boston"});
    CHECK(g.num_edges() == 1);
    CHECK_FALSE(g.find(user("u3")));
}

TEST_CASE("reposts and co-mentioned users") {
    BuildDiagnostics diag;
    const corpus::Corpus c = {post("p1", "u1", {}), post("p2", "u2", {}, {"u3", "u4"}, "p1"),
                              post("p3", "u2", {}, {}, "missing")};
    const auto g = build_graph(c, {"x"}, &diag);
    CHECK(counts_of(g, user("u2"), user("u1")) == EdgeCounts{0, 0, 1, 0});
    CHECK(counts_of(g, user("u3"), user("u4")) == EdgeCounts{0, 0, 0, 1});
    CHECK(counts_of(g, user("u2"), user("u3"))[0] == 1);
    CHECK(diag.unresolved_reposts == 1);
    CHECK(diag.posts == 3);
}

TEST_CASE("summed weight") {
    TypedEdge e;
    e.counts = {0, 2, 0, 1};
    CHECK(summed_weight(e) == 3);
    e.counts = {0, 0, 1, 0};
    CHECK(summed_weight(e) == 1);
}

TEST_CASE("stored edges always have positive weight") {
    ContentContextGraph g;
    const auto a = g.add_vertex(user("a"));
    const auto b = g.add_vertex(user("b"));
    g.add_count(a, b, EdgeType::UserPost, 0);
    CHECK(g.num_edges() == 0);
    g.add_count(a, b, EdgeType::Repost, 1);
    CHECK(g.num_edges() == 1);
    CHECK(g.counts(b, a) == EdgeCounts{0, 0, 1, 0});
}

TEST_CASE("building is additive over corpus splits") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        const auto c = random_corpus(rng, 200);
        const std::size_t cut = 50 + rng() % 100;
        // Reposts that cross the cut cannot resolve inside one half.
        corpus::Corpus c1(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(cut));
        corpus::Corpus c2(c.begin() + static_cast<std::ptrdiff_t>(cut), c.end());
        for (auto& p : c2) {
            if (p.repost_of) {
                const auto src = std::stoul(p.repost_of->substr(1));
                if (src < cut) p.repost_of.reset();
            }
        }
        corpus::Corpus joined = c1;
        joined.insert(joined.end(), c2.begin(), c2.end());
        auto merged = build_graph(c1, kTags);
        merged.merge(build_graph(c2, kTags));
        CHECK(same_graph(merged, build_graph(joined, kTags)));
    }
}

TEST_CASE("building is invariant under post reordering") {
    std::mt19937_64 rng(6);
    auto c = random_corpus(rng, 300);
    const auto g = build_graph(c, kTags);
    for (int rep = 0; rep < 5; ++rep) {
        std::shuffle(c.begin(), c.end(), rng);
        CHECK(same_graph(g, build_graph(c, kTags)));
    }
}

TEST_CASE("edge kinds follow the interaction types") {
    std::mt19937_64 rng(7);
    const auto g = build_graph(random_corpus(rng, 500), kTags);
    std::vector<std::size_t> degree(g.num_vertices(), 0);
    for (const auto& e : g.edges()) {
        CHECK(e.u < e.v);
        CHECK(summed_weight(e) >= 1);
        ++degree[e.u];
        ++degree[e.v];
        const auto ku = g.vertex(e.u).kind;
        const auto kv = g.vertex(e.v).kind;
        if (ku == VertexKind::Hashtag && kv == VertexKind::Hashtag) {
            CHECK(e.counts == EdgeCounts{0, 0, 0, e.counts[3]});
            CHECK(e.counts[3] > 0);
        } else if (ku == VertexKind::User && kv == VertexKind::User) {
            CHECK(e.counts[1] == 0);
        } else {
            CHECK(e.counts == EdgeCounts{0, e.counts[1], 0, 0});
        }
    }
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
        if (g.vertex(v).kind == VertexKind::Hashtag) CHECK(degree[v] >= 1);
}

TEST_CASE("graph stats on small graphs") {
    const auto g1 = build_graph({post("p1", "u1", {"boston", "job"}, {"u2"})}, {"boston", "job"});
    const auto s1 = graph_stats(g1);
    CHECK(s1.users == 2);
    CHECK(s1.hashtags == 2);
    CHECK(s1.edges_with_type == EdgeCounts{1, 2, 0, 1});
    CHECK(s1.degree_deciles[9] == 3);

    const auto s2 = graph_stats(ContentContextGraph{});
    CHECK(s2.users == 0);
    CHECK(s2.total_counts == EdgeCounts{});

    const auto g3 = build_graph({post("p1", "u1", {"x"}), post("p2", "u1", {"x"})}, {"x"});
    const auto s3 = graph_stats(g3);
    CHECK(s3.total_counts == EdgeCounts{0, 2, 0, 0});
    CHECK(s3.degree_deciles[0] == 1);
    CHECK(format_stats(s3) == format_stats(graph_stats(g3)));
}

TEST_CASE("vertex keys") {
    const Vertex v{VertexKind::Hashtag, Platform::B, "boston"};
    CHECK(v.key() == "H:B:boston");
    CHECK(Vertex::parse("H:B:boston") == v);
    CHECK(Vertex::parse("U:A:a:b").label == "a:b");
    CHECK_THROWS_AS(Vertex::parse("X:A:foo"), DataError);
}

TEST_CASE("graph file round-trip") {
    oracle::TempDir dir("netgraph");
    std::mt19937_64 rng(8);
    const auto g = build_graph(random_corpus(rng, 200), kTags);
    write_graph(dir.file("g.tsv"), g);
    const auto back = read_graph(dir.file("g.tsv"), GraphTag::A);
    CHECK(same_graph(g, back));
    write_graph(dir.file("g2.tsv"), back);
    CHECK(oracle::read_file(dir.file("g.tsv")) == oracle::read_file(dir.file("g2.tsv")));
}
