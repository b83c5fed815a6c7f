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
#include <random>

#include "doctest.h"
#include "hashlink/align.hpp"
#include "oracles.hpp"

using namespace hashlink;
using namespace hashlink::align;
using graph::WeightedGraph;

namespace {

WeightedGraph from_edges(const std::vector<std::string>& labels,
                         const std::vector<std::tuple<int, int, double>>& edges) {
    WeightedGraph g;
    for (const auto& l : labels) g.add_vertex(l);
    for (auto [u, v, w] : edges) g.add_edge(u, v, w);
    return g;
}

std::map<std::string, double> row_of(const JoinedGraph& j, const std::string& label) {
    std::map<std::string, double> out;
    const auto u = *j.find(label);
    for (std::size_t k = j.rows.offsets[u]; k < j.rows.offsets[u + 1]; ++k)
        out[j.labels[j.rows.targets[k]]] = j.rows.probs[k];
    return out;
}

std::map<std::uint32_t, double> markov_row(const kernels::TransitionRows& r, std::uint32_t u) {
    std::map<std::uint32_t, double> out;
    for (std::size_t k = r.offsets[u]; k < r.offsets[u + 1]; ++k) out[r.targets[k]] = r.probs[k];
    return out;
}

// Triangles {a1, b1, s} and {a2, b2, s}, seed s.
struct TwoTriangles {
    WeightedGraph a = from_edges({"a1", "b1", "sA"}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    WeightedGraph b = from_edges({"a2", "b2", "sB"}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    SeedSet seeds{{{2, 2, "s"}}, SeedDerivation::ExplicitList};
};

JoinedGraph joined_from(const WeightedGraph& g) {
    JoinedGraph j;
    j.labels = g.labels();
    j.rows = to_markov(g);
    for (std::uint32_t v = 0; v < j.labels.size(); ++v) j.index.emplace(j.labels[v], v);
    return j;
}

netgraph::ContentContextGraph tags_graph(Platform p, const std::vector<std::string>& tags) {
    netgraph::ContentContextGraph g(p == Platform::A ? netgraph::GraphTag::A : netgraph::GraphTag::B);
    const auto u = g.add_vertex({netgraph::VertexKind::User, p, "someone"});
    for (const auto& t : tags) {
        const auto h = g.add_vertex({netgraph::VertexKind::Hashtag, p, t});
        g.add_count(u, h, netgraph::EdgeType::HashtagMention);
    }
    return g;
}

}  // namespace

TEST_CASE("seeds are the common hashtags") {
    const auto s = find_seeds(tags_graph(Platform::A, {"job", "boston"}), tags_graph(Platform::B, {"food", "boston"}));
    REQUIRE(s.size() == 1);
    CHECK(s.pairs[0].label == "H:AB:boston");
    CHECK(s.derivation == SeedDerivation::CommonHashtags);

    CHECK_THROWS_AS(find_seeds(tags_graph(Platform::A, {"x"}), tags_graph(Platform::B, {"y"})), DataError);

    const auto all = find_seeds(tags_graph(Platform::A, {"c", "a", "b"}), tags_graph(Platform::B, {"b", "c", "a"}));
    REQUIRE(all.size() == 3);
    CHECK(all.pairs[0].label == "H:AB:a");
    CHECK(all.pairs[2].label == "H:AB:c");
}

TEST_CASE("user vertices never become seeds") {
    auto a = tags_graph(Platform::A, {"x"});
    auto b = tags_graph(Platform::B, {"x"});
    CHECK(find_seeds(a, b).size() == 1);
}

TEST_CASE("markov rows normalize edge weights") {
    const auto star = from_edges({"c", "l1", "l2", "l3", "l4"}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}});
    const auto r = to_markov(star);
    for (auto [v, p] : markov_row(r, 0)) CHECK(p == 0.25);
    CHECK(markov_row(r, 1) == std::map<std::uint32_t, double>{{0, 1.0}});

    const auto w = from_edges({"x", "p", "q", "r", "lonely"}, {{0, 1, 2}, {0, 2, 1}, {0, 3, 1}});
    const auto rw = to_markov(w);
    CHECK(markov_row(rw, 0) == std::map<std::uint32_t, double>{{1, 0.5}, {2, 0.25}, {3, 0.25}});
    CHECK(markov_row(rw, 4).empty());
}

TEST_CASE("aggregation of two triangles") {
    TwoTriangles t;
    const auto j = aggregate_merge(t.a, t.b, t.seeds, 0.5);
    CHECK(j.size() == 5);
    const auto fused = row_of(j, "s");
    CHECK(fused == std::map<std::string, double>{{"a1", 0.25}, {"b1", 0.25}, {"a2", 0.25}, {"b2", 0.25}});
    CHECK(row_of(j, "a1") == std::map<std::string, double>{{"b1", 0.5}, {"s", 0.5}});
    CHECK(row_of(j, "b2") == std::map<std::string, double>{{"a2", 0.5}, {"s", 0.5}});

    const auto j1 = aggregate_merge(t.a, t.b, t.seeds, 1.0);
    CHECK(row_of(j1, "s") == std::map<std::string, double>{{"a1", 0.5}, {"b1", 0.5}});
}

TEST_CASE("aggregation with one isolated side") {
    const auto a = from_edges({"x", "sA"}, {{0, 1, 1}});
    const auto b = from_edges({"y", "sB"}, {});
    const SeedSet seeds{{{1, 1, "s"}}, SeedDerivation::ExplicitList};
    const auto j = aggregate_merge(a, b, seeds, 0.5);
    CHECK(row_of(j, "s") == std::map<std::string, double>{{"x", 1.0}});
    CHECK(row_of(j, "y").empty());
}

TEST_CASE("aggregation rejects bad input") {
    TwoTriangles t;
    CHECK_THROWS_AS(aggregate_merge(t.a, t.b, SeedSet{}, 0.5), DataError);
    const SeedSet twice{{{2, 2, "s"}, {2, 1, "t"}}, SeedDerivation::ExplicitList};
    CHECK_THROWS_AS(aggregate_merge(t.a, t.b, twice, 0.5), DataError);
}

TEST_CASE("aggregation invariants on random graphs") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 30; ++rep) {
        WeightedGraph a, b;
        const std::size_t na = 10 + rng() % 20;
        const std::size_t nb = 10 + rng() % 20;
        const auto ga = oracle::random_graph(rng, na, 0.2);
        const auto gb = oracle::random_graph(rng, nb, 0.2);
        for (const auto& l : ga.labels()) a.add_vertex("A" + l);
        for (const auto& e : ga.edges()) a.add_edge(e.u, e.v, e.weight);
        for (const auto& l : gb.labels()) b.add_vertex("B" + l);
        for (const auto& e : gb.edges()) b.add_edge(e.u, e.v, e.weight);

        SeedSet seeds, swapped;
        const std::size_t k = 1 + rng() % 5;
        for (std::uint32_t i = 0; i < k; ++i) {
            seeds.pairs.push_back({i, i + 1, "S" + std::to_string(i)});
            swapped.pairs.push_back({i + 1, i, "S" + std::to_string(i)});
        }
        const auto j = aggregate_merge(a, b, seeds, 0.5);
        CHECK(j.size() == na + nb - k);
        for (std::uint32_t u = 0; u < j.size(); ++u) {
            double s = 0.0;
            for (std::size_t e = j.rows.offsets[u]; e < j.rows.offsets[u + 1]; ++e) s += j.rows.probs[e];
            if (j.rows.offsets[u + 1] > j.rows.offsets[u]) CHECK(std::abs(s - 1.0) <= 1e-9);
        }

        const auto js = aggregate_merge(b, a, swapped, 0.5);
        REQUIRE(js.size() == j.size());
        for (const auto& l : j.labels) {
            const auto r1 = row_of(j, l);
            const auto r2 = row_of(js, l);
            REQUIRE(r1.size() == r2.size());
            for (const auto& [t, p] : r1) CHECK(std::abs(r2.at(t) - p) <= 1e-15);
        }
    }
}

TEST_CASE("linking adds one edge per seed") {
    TwoTriangles t;
    const auto g = link_merge(t.a, t.b, t.seeds, 1.0);
    CHECK(g.num_vertices() == 6);
    CHECK(g.num_edges() == 7);
    CHECK(g.weight(2, 5) == 1.0);

    const auto u = link_merge(t.a, t.b, SeedSet{}, 1.0);
    CHECK(u.num_vertices() == 6);
    CHECK(u.num_edges() == 6);

    const auto wa = from_edges({"p", "q"}, {{0, 1, 3.5}});
    const auto wb = from_edges({"p", "r", "z"}, {{0, 1, 0.25}});
    const SeedSet one{{{0, 0, "p"}}, SeedDerivation::ExplicitList};
    const auto w = link_merge(wa, wb, one, 2.0);
    CHECK(w.num_vertices() == 5);
    CHECK(w.weight(0, 1) == 3.5);
    CHECK(w.weight(2, 3) == 0.25);
    CHECK(w.weight(0, 2) == 2.0);
    CHECK_THROWS_AS(link_merge(wa, wb, one, 0.0), ConfigError);
}

TEST_CASE("largest connected component") {
    const auto connected = joined_from(from_edges({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}}));
    CHECK(largest_connected_component(connected) == std::vector<std::uint32_t>{0, 1, 2});

    const auto five_three = joined_from(from_edges(
        {"x1", "x2", "x3", "y1", "y2", "y3", "y4", "y5"},
        {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}, {4, 5, 1}, {5, 6, 1}, {6, 7, 1}}));
    CHECK(largest_connected_component(five_three) == std::vector<std::uint32_t>{3, 4, 5, 6, 7});

    const auto tie = joined_from(from_edges({"m", "n", "o", "c", "d", "e"},
                                            {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}, {4, 5, 1}}));
    CHECK(largest_connected_component(tie) == std::vector<std::uint32_t>{3, 4, 5});
}

TEST_CASE("cross communities of two clusters joined by a seed") {
    // A: 4-clique a1..a4 with a pendant seed on a1. B: 4-clique b1..b3 + seed.
    const auto a = from_edges({"a1", "a2", "a3", "a4", "sA"},
                              {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}, {0, 4, 1}});
    const auto b = from_edges({"b1", "b2", "b3", "sB"},
                              {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
    const SeedSet seeds{{{4, 3, "s"}}, SeedDerivation::ExplicitList};
    const auto j = aggregate_merge(a, b, seeds, 0.5);
    REQUIRE(j.size() == 8);
    const auto cc = detect_cross_communities(j);
    const auto P = oracle::dense(j.rows);

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_m;
    oracle::for_each_partition(8, [&](const std::vector<int>& m) {
        const double L = oracle::map_equation_directed(P, 0.85, m);
        if (L < best - 1e-12) {
            best = L;
            best_m = m;
        }
    });
    std::vector<int> got(cc.partition.membership.begin(), cc.partition.membership.end());
    CHECK(oracle::map_equation_directed(P, 0.85, got) == doctest::Approx(best).epsilon(1e-9));
    CHECK(cc.code_length == doctest::Approx(best).epsilon(1e-9));
    CHECK(cc.partition.n_communities == 2);
    const auto& m = cc.partition.membership;
    CHECK(m[0] == m[1]);
    CHECK(m[0] == m[2]);
    CHECK(m[0] == m[3]);
    CHECK(m[4] == m[5]);
    CHECK(m[4] == m[6]);
    CHECK(m[4] == m[7]);
    CHECK(m[0] != m[4]);
}

TEST_CASE("cross communities of a clique and the null assignment") {
    const auto a = from_edges({"p", "q", "r", "sA", "far1", "far2"},
                              {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}, {4, 5, 1}});
    const auto b = from_edges({"sB", "t"}, {{0, 1, 1}});
    const SeedSet seeds{{{3, 0, "s"}}, SeedDerivation::ExplicitList};
    const auto j = aggregate_merge(a, b, seeds, 0.5);
    const auto cc = detect_cross_communities(j);
    CHECK(cc.component.size() == 5);
    const auto& m = cc.partition.membership;
    CHECK(m[*j.find("far1")] == graph::kUnassigned);
    CHECK(m[*j.find("far2")] == graph::kUnassigned);

    const auto clique = from_edges({"c1", "c2", "c3", "sA"},
                                   {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
    const auto lonely = from_edges({"sB"}, {});
    const auto jc = aggregate_merge(clique, lonely, SeedSet{{{3, 0, "s"}}, SeedDerivation::ExplicitList}, 0.5);
    const auto cq = detect_cross_communities(jc);
    CHECK(cq.partition.n_communities == 1);
    const auto P = oracle::dense(jc.rows);
    double best = std::numeric_limits<double>::infinity();
    oracle::for_each_partition(4, [&](const std::vector<int>& mm) {
        best = std::min(best, oracle::map_equation_directed(P, 0.85, mm));
    });
    CHECK(oracle::map_equation_directed(P, 0.85, {0, 0, 0, 0}) == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("cross communities are deterministic") {
    std::mt19937_64 rng(32);
    const auto a = oracle::random_graph(rng, 40, 0.1);
    WeightedGraph b;
    const auto gb = oracle::random_graph(rng, 40, 0.1);
    for (const auto& l : gb.labels()) b.add_vertex("B" + l);
    for (const auto& e : gb.edges()) b.add_edge(e.u, e.v, e.weight);
    const SeedSet seeds{{{0, 0, "s0"}, {1, 1, "s1"}}, SeedDerivation::ExplicitList};
    const auto j = aggregate_merge(a, b, seeds, 0.5);
    const auto x = detect_cross_communities(j, {7});
    const auto y = detect_cross_communities(j, {7});
    CHECK(x.partition.membership == y.partition.membership);
    CHECK(x.code_length == y.code_length);
}

TEST_CASE("joined graph and seed manifest files") {
    oracle::TempDir dir("align");
    TwoTriangles t;
    const auto j = aggregate_merge(t.a, t.b, t.seeds, 0.5);
    write_joined(dir.file("j.tsv"), j);
    const auto back = read_joined(dir.file("j.tsv"), t.a, t.b, t.seeds);
    CHECK(back.labels == j.labels);
    CHECK(back.rows.offsets == j.rows.offsets);
    CHECK(back.rows.targets == j.rows.targets);
    CHECK(back.rows.probs == j.rows.probs);
    CHECK(back.from_a == j.from_a);
    CHECK(back.from_b == j.from_b);

    write_seed_manifest(dir.file("seeds.tsv"), t.seeds, t.a, t.b);
    CHECK(oracle::read_file(dir.file("seeds.tsv")) == "s\tsA\tsB\n");
    const auto seeds = read_seed_manifest(dir.file("seeds.tsv"), t.a, t.b);
    REQUIRE(seeds.size() == 1);
    CHECK(seeds.pairs[0].a == 2);
    CHECK(seeds.pairs[0].b == 2);
    CHECK(seeds.pairs[0].label == "s");
}
