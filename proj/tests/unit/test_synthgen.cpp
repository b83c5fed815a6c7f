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
#include <set>

#include "doctest.h"
#include "hashlink/synthgen.hpp"
#include "oracles.hpp"

using namespace hashlink;
using namespace hashlink::synthgen;

namespace {

SynthConfig small(std::uint64_t seed) {
    SynthConfig c;
    c.seed = seed;
    c.n_entities = 200;
    c.vocab_size = 400;
    c.n_topics_true = 5;
    return c;
}

}  // namespace

TEST_CASE("generation is byte-identical for a fixed seed") {
    oracle::TempDir d1("synth1"), d2("synth2");
    write_output(d1.path().string(), generate(small(3)));
    write_output(d2.path().string(), generate(small(3)));
    for (const char* f : {"corpus_a.jsonl", "corpus_b.jsonl", "ground_truth.tsv"}) {
        CHECK(oracle::read_file(d1.file(f)) == oracle::read_file(d2.file(f)));
        CHECK(!oracle::read_file(d1.file(f)).empty());
    }
    oracle::TempDir d3("synth3");
    write_output(d3.path().string(), generate(small(4)));
    CHECK(oracle::read_file(d1.file("corpus_a.jsonl")) != oracle::read_file(d3.file("corpus_a.jsonl")));
}

TEST_CASE("no cross-platform entities gives empty ground truth") {
    auto c = small(5);
    c.cross_platform_fraction = 0.0;
    const auto out = generate(c);
    CHECK(out.truth.pairs.empty());
    CHECK(!out.corpus_a.empty());
    CHECK(!out.corpus_b.empty());
}

TEST_CASE("no perturbation makes every match trivial") {
    auto c = small(6);
    c.username_perturbation_rate = 0.0;
    const auto out = generate(c);
    REQUIRE(!out.truth.pairs.empty());
    for (const auto& p : out.truth.pairs) {
        CHECK(p.user_a == p.user_b);
        CHECK_FALSE(p.nontrivial);
    }
}

TEST_CASE("output loads cleanly and matches the ground truth") {
    oracle::TempDir dir("synth_load");
    auto cfg = small(7);
    const auto out = generate(cfg);
    write_output(dir.path().string(), out);
    const auto a = corpus::load_corpus(dir.file("corpus_a.jsonl"));
    const auto b = corpus::load_corpus(dir.file("corpus_b.jsonl"));
    CHECK(a.skipped == 0);
    CHECK(b.skipped == 0);
    CHECK(a.posts.size() == out.corpus_a.size());
    CHECK(b.posts.size() == out.corpus_b.size());

    std::set<std::string> authors_a, authors_b, ids;
    for (const auto& p : a.posts) {
        authors_a.insert(p.author);
        CHECK(p.platform == Platform::A);
        ids.insert(p.post_id);
    }
    for (const auto& p : b.posts) {
        authors_b.insert(p.author);
        CHECK(p.platform == Platform::B);
    }
    std::size_t resolvable = 0, reposts = 0;
    for (const auto& p : a.posts) {
        if (p.repost_of) {
            ++reposts;
            resolvable += ids.count(*p.repost_of);
        }
        for (const auto& m : p.mentioned_users) CHECK(authors_a.count(m));
    }
    CHECK(reposts > 0);
    CHECK(resolvable == reposts);

    const auto truth = read_ground_truth(dir.file("ground_truth.tsv"));
    REQUIRE(truth.size() == out.truth.pairs.size());
    std::set<std::string> seen_a, seen_b;
    for (const auto& p : truth) {
        CHECK(authors_a.count(p.user_a));
        CHECK(authors_b.count(p.user_b));
        CHECK(p.nontrivial == (p.user_a != p.user_b));
        CHECK(seen_a.insert(p.user_a).second);
        CHECK(seen_b.insert(p.user_b).second);
    }
    CHECK(truth.size() == static_cast<std::size_t>(std::llround(cfg.cross_platform_fraction * 200)));
}

TEST_CASE("user hashtags come from the text") {
    const auto out = generate(small(8));
    const auto stop = corpus::StopwordSet{};
    std::size_t tagged = 0;
    for (const auto& raw : out.corpus_a) {
        const auto p = corpus::preprocess(raw, stop);
        for (const auto& h : p.user_hashtags) {
            CHECK(std::find(p.tokens.begin(), p.tokens.end(), h) != p.tokens.end());
            ++tagged;
        }
    }
    CHECK(tagged > 0);
}

TEST_CASE("nontrivial share tracks the perturbation rate") {
    for (std::uint64_t seed : {11, 12, 13}) {
        for (double rate : {0.1, 0.3, 0.6}) {
            SynthConfig c;
            c.seed = seed;
            c.n_entities = 1000;
            c.username_perturbation_rate = rate;
            c.posts_per_user_min = 1;
            c.posts_per_user_max = 2;
            const auto out = generate(c);
            std::size_t nt = 0;
            for (const auto& p : out.truth.pairs) nt += p.nontrivial;
            const double share = static_cast<double>(nt) / static_cast<double>(out.truth.pairs.size());
            CHECK(std::abs(share - rate) <= 0.05);
        }
    }
}

TEST_CASE("planted topics are disjoint") {
    const auto out = generate(small(9));
    std::set<std::string> all;
    std::size_t total = 0;
    for (const auto& core : out.truth.topic_cores) {
        CHECK(!core.empty());
        total += core.size();
        all.insert(core.begin(), core.end());
    }
    CHECK(all.size() == total);
    for (const auto& mix : out.truth.mixtures) {
        double s = 0.0;
        for (double x : mix) s += x;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("invalid configurations are rejected") {
    auto c = small(1);
    c.hashtag_rate = 1.5;
    CHECK_THROWS_AS(generate(c), ConfigError);
    c = small(1);
    c.vocab_size = 3;
    CHECK_THROWS_AS(generate(c), ConfigError);
    c = small(1);
    c.posts_per_user_min = 9;
    c.posts_per_user_max = 2;
    CHECK_THROWS_AS(generate(c), ConfigError);
    c = small(1);
    c.n_entities = 0;
    CHECK_THROWS_AS(generate(c), ConfigError);
}
