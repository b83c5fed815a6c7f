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
#include "hashlink/features.hpp"
#include "oracles.hpp"

using namespace hashlink;
using namespace hashlink::features;
using graph::WeightedGraph;

namespace {

WeightedGraph from_edges(const std::vector<std::string>& labels,
                         const std::vector<std::tuple<int, int, double>>& edges) {
    WeightedGraph g;
    for (const auto& l : labels) g.add_vertex(l);
    for (auto [u, v, w] : edges) g.add_edge(u, v, w);
    return g;
}

align::JoinedGraph joined_from(const WeightedGraph& g) {
    align::JoinedGraph j;
    j.labels = g.labels();
    j.rows = align::to_markov(g);
    for (std::uint32_t v = 0; v < j.labels.size(); ++v) j.index.emplace(j.labels[v], v);
    return j;
}

}  // namespace

TEST_CASE("k-hop neighbors use exact distances") {
    const auto path = from_edges({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}});
    CHECK(khop_neighbors(path, 0, 2) == std::vector<std::uint32_t>{2});
    CHECK(khop_neighbors(path, 0, 1) == std::vector<std::uint32_t>{1});
    CHECK(khop_neighbors(path, 0, 3).empty());

    const auto tri = from_edges({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    for (std::uint32_t v = 0; v < 3; ++v) CHECK(khop_neighbors(tri, v, 2).empty());

    const auto iso = from_edges({"a", "b", "z"}, {{0, 1, 1}});
    for (std::size_t k = 1; k <= 3; ++k) CHECK(khop_neighbors(iso, 2, k).empty());
    CHECK_THROWS_AS(khop_neighbors(iso, 7, 1), DataError);
}

TEST_CASE("community counts") {
    const auto star = from_edges({"u", "x", "y", "z"}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
    const std::vector<std::int32_t> comm{5, 0, 0, 1};
    const auto c = community_feature(star, comm, 0, 1);
    CHECK(c.counts == std::map<std::int32_t, std::uint64_t>{{0, 2}, {1, 1}});
    CHECK(c.total() == 3);

    const auto iso = from_edges({"u", "v"}, {});
    CHECK(community_feature(iso, std::vector<std::int32_t>{0, 0}, 0, 1).total() == 0);

    const std::vector<std::int32_t> partial{0, graph::kUnassigned, 0, 1};
    CHECK(community_feature(star, partial, 0, 1).counts == std::map<std::int32_t, std::uint64_t>{{0, 1}, {1, 1}});
    CHECK_THROWS_AS(community_feature(star, comm, 9, 1), DataError);
}

TEST_CASE("community counts match a Floyd-Warshall brute force") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        const auto g = oracle::random_graph(rng, 50, 0.04 + 0.004 * rep);
        std::vector<std::int32_t> comm(50);
        for (auto& x : comm) x = static_cast<std::int32_t>(rng() % 6) - 1;  // -1 is unassigned
        const auto dist = oracle::hop_distances(g);
        for (std::uint32_t v = 0; v < 50; ++v) {
            for (std::size_t k : {1, 2}) {
                std::map<std::int32_t, std::uint64_t> expect;
                std::vector<std::uint32_t> ring;
                for (std::uint32_t u = 0; u < 50; ++u) {
                    if (u != v && dist[v][u] == k) {
                        ring.push_back(u);
                        if (comm[u] >= 0) ++expect[comm[u]];
                    }
                }
                CHECK(khop_neighbors(g, v, k) == ring);
                CHECK(community_feature(g, comm, v, k).counts == expect);
            }
        }
    }
}

TEST_CASE("cosine similarity") {
    const SparseVector x{{0, 2.0}};
    const SparseVector y{{0, 1.0}, {1, 1.0}};
    CHECK(cosine_similarity(x, y) == doctest::Approx(0.70710678118654752).epsilon(1e-15));
    CHECK(cosine_similarity(y, y) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cosine_similarity(SparseVector{{0, 1.0}}, SparseVector{{1, 4.0}}) == 0.0);
    CHECK(cosine_similarity(SparseVector{}, y) == 0.0);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int rep = 0; rep < 200; ++rep) {
        SparseVector a, b, scaled;
        const double alpha = 0.001 + u(rng) * 100.0;
        for (std::uint32_t i = 0; i < 10; ++i) {
            if (rng() % 2) a.push_back({i, u(rng)});
            if (rng() % 2) b.push_back({i, u(rng)});
        }
        for (auto [i, v] : a) scaled.push_back({i, alpha * v});
        const double s = cosine_similarity(a, b);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        if (!a.empty()) CHECK(cosine_similarity(a, scaled) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("neighborhood rows") {
    const auto j = joined_from(from_edges({"c", "l1", "l2", "l3", "far"}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}));
    const auto f = neighborhood_feature(j, 0, 1);
    REQUIRE(f.probs.size() == 3);
    for (auto [v, p] : f.probs) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const auto lonely = neighborhood_feature(j, 4, 1);
    CHECK(lonely.probs.empty());
    CHECK(neighborhood_similarity(lonely, f) == 0.0);
    CHECK(neighborhood_similarity(f, f) == doctest::Approx(1.0).epsilon(1e-15));

    // l1 reaches only c; so unconnected l1 and l2 put zero mass on each other.
    const auto l1 = neighborhood_feature(j, 1, 1);
    for (auto [v, p] : l1.probs) CHECK(v != 2);
    CHECK(neighborhood_similarity(l1, f) == 0.0);
    CHECK_THROWS_AS(neighborhood_feature(j, 9, 1), DataError);
}

TEST_CASE("neighborhood rows match dense matrix powers") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 10; ++rep) {
        const auto j = joined_from(oracle::random_graph(rng, 30, 0.12));
        const auto P = oracle::dense(j.rows);
        auto Pk = P;
        for (std::size_t k = 1; k <= 3; ++k) {
            if (k > 1) Pk = oracle::matmul(Pk, P);
            for (std::uint32_t v = 0; v < 30; ++v) {
                const auto f = neighborhood_feature(j, v, k);
                std::vector<double> got(30, 0.0);
                double total = 0.0;
                for (auto [t, p] : f.probs) {
                    got[t] = p;
                    total += p;
                    CHECK(p >= 0.0);
                    CHECK(p <= 1.0);
                }
                for (std::uint32_t t = 0; t < 30; ++t) CHECK(std::abs(got[t] - Pk[v][t]) <= 1e-12);
                if (!f.probs.empty()) CHECK(std::abs(total - 1.0) <= 1e-9);
            }
        }
    }
}

TEST_CASE("feature dump format") {
    oracle::TempDir dir("features");
    write_feature_dump(dir.file("f.txt"), {{"U:A:x", {{0, 2.0}, {3, 0.5}}}, {"U:B:y", {}}});
    CHECK(oracle::read_file(dir.file("f.txt")) == "U:A:x\t0:2 3:0.5\nU:B:y\t\n");
}
