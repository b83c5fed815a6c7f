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
#include <fstream>
#include <random>

#include "doctest.h"
#include "hashlink/corpus.hpp"
#include "oracles.hpp"

using namespace hashlink;
using namespace hashlink::corpus;

namespace {

std::vector<std::string> tokens_of(const std::string& raw, const StopwordSet& stop = {}) {
    return tokenize_and_filter(normalize_text(raw), stop).tokens;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream out(path);
    for (const auto& l : lines) out << l << '\n';
}

const char* kValidLine =
    R"({"platform":"A","post_id":"p1","author":"alice","text":"hello #boston","mentions":[],"repost_of":null,"ts":1})";

}  // namespace

TEST_CASE("normalize_text examples") {
    CHECK(normalize_text("Check \xE2\x98\x95 #Boston http://t.co/x") == "check #boston");
    CHECK(normalize_text("") == "");
    CHECK(normalize_text("RT @bob Hello") == "hello");
}

TEST_CASE("normalize_text strips noise and folds compatibility forms") {
    CHECK(normalize_text("\xEF\xBC\xA2\xEF\xBC\xAF\xEF\xBC\xB3") == "bos");  // fullwidth BOS
    CHECK(normalize_text("\xEF\xAC\x81ne") == "fine");                        // fi ligature
    CHECK(normalize_text("great :) day :-(") == "great day");
    CHECK(normalize_text("great:) day") == "great day");
    CHECK(normalize_text("party \xF0\x9F\x8E\x89\xF0\x9F\x8E\x89 now") == "party now");
    CHECK(normalize_text("see www.example.com and https://x.y/z ok") == "see and ok");
    CHECK(normalize_text("tabs\tand\nnewlines") == "tabs and newlines");
    CHECK(normalize_text("rt is a word") == "rt is a word");
    CHECK(normalize_text("xdxd boxd") == "xdxd boxd");
}

TEST_CASE("tokenize_and_filter examples") {
    SUBCASE("hashtag kept as a word") {
        const auto r = tokenize_and_filter(normalize_text("the #worldcup2014 final!"), {"the"});
        CHECK(r.tokens == std::vector<std::string>{"worldcup2014", "final"});
        CHECK(r.user_hashtags == std::set<std::string>{"worldcup2014"});
    }
    SUBCASE("multi-word hashtag is one token") {
        const auto r = tokenize_and_filter(normalize_text("#NewYear2014"), {});
        CHECK(r.tokens == std::vector<std::string>{"newyear2014"});
        CHECK(r.user_hashtags == std::set<std::string>{"newyear2014"});
    }
    SUBCASE("all stopwords") {
        const auto r = tokenize_and_filter("a an the", {"a", "an", "the"});
        CHECK(r.tokens.empty());
        CHECK(r.user_hashtags.empty());
    }
}

TEST_CASE("tokenizer edge rules") {
    CHECK(tokens_of("(#boston) rock-n-roll it's x y") == std::vector<std::string>{"boston", "rock-n-roll", "it's"});
    CHECK(tokens_of("@alice (@bob) hi!! ...") == std::vector<std::string>{"hi"});
    CHECK(tokens_of("##double #") == std::vector<std::string>{"double"});
    const auto r = tokenize_and_filter(normalize_text("Go #Red_Sox"), {});
    CHECK(r.user_hashtags == std::set<std::string>{"red_sox"});
}

TEST_CASE("bundled stopwords") {
    const auto& s = default_stopwords();
    CHECK(s.size() > 150);
    CHECK(s.contains("the"));
    CHECK(s.contains("and"));
    CHECK(!s.contains("boston"));
}

TEST_CASE("processed-post invariants on random text") {
    std::mt19937_64 rng(17);
    const std::vector<std::string> pool = {"Boston", "#Job", "the", "RT", "@bob", "http://t.co/a", ":)", "\xE2\x98\x95",
                                           "caf\xC3\xA9", "#NewYear", "!!", "(#x)", "www.z.org", "a", "d\xC3\xA9j\xC3\xA0",
                                           "#", "rock-n-roll", "Ｆｕｌｌ", "\xF0\x9F\x98\x80ok", "end."};
    const auto& stop = default_stopwords();
    for (int rep = 0; rep < 300; ++rep) {
        RawPost raw;
        raw.post_id = "p" + std::to_string(rep);
        raw.author = "u";
        const std::size_t len = rng() % 12;
        for (std::size_t i = 0; i < len; ++i) raw.text += (i ? " " : "") + pool[rng() % pool.size()];
        const auto p = preprocess(raw, stop);
        const std::set<std::string> tokset(p.tokens.begin(), p.tokens.end());
        for (const auto& t : p.tokens) {
            CHECK(!t.empty());
            CHECK(t.find('#') == std::string::npos);
            CHECK(t.find(' ') == std::string::npos);
            CHECK(t.find("http") == std::string::npos);
            CHECK(!stop.contains(t));
        }
        for (const auto& h : p.user_hashtags) CHECK(tokset.contains(h));

        RawPost again = raw;
        again.text = reassemble(p);
        const auto q = preprocess(again, stop);
        CHECK(std::set<std::string>(q.tokens.begin(), q.tokens.end()) == tokset);
        CHECK(q.user_hashtags == p.user_hashtags);
    }
}

TEST_CASE("metadata is carried through preprocess") {
    RawPost raw{Platform::B, "p9", "carol", "RT @dave #Food time", {"dave"}, std::string("p1"), 77};
    const auto p = preprocess(raw, default_stopwords());
    CHECK(p.platform == Platform::B);
    CHECK(p.post_id == "p9");
    CHECK(p.author == "carol");
    CHECK(p.mentioned_users == std::vector<std::string>{"dave"});
    CHECK(p.repost_of == std::optional<std::string>("p1"));
    CHECK(p.timestamp == 77);
    CHECK(p.tokens == std::vector<std::string>{"food", "time"});
}

TEST_CASE("load_corpus counts malformed lines") {
    oracle::TempDir dir("corpus");
    SUBCASE("three valid lines") {
        write_lines(dir.file("c.jsonl"),
                    {kValidLine,
                     R"({"platform":"A","post_id":"p2","author":"bob","text":"x","mentions":["alice"],"repost_of":"p1","ts":2})",
                     R"({"platform":"B","post_id":"p1","author":"bob","text":"y","mentions":[],"repost_of":null,"ts":3})"});
        const auto r = load_corpus(dir.file("c.jsonl"));
        CHECK(r.posts.size() == 3);
        CHECK(r.skipped == 0);
        CHECK(r.posts[1].repost_of == std::optional<std::string>("p1"));
        CHECK(r.posts[1].mentioned_users == std::vector<std::string>{"alice"});
    }
    SUBCASE("two valid and one malformed") {
        write_lines(dir.file("c.jsonl"),
                    {kValidLine, "{not json",
                     R"({"platform":"A","post_id":"p2","author":"bob","text":"x","mentions":[],"repost_of":null,"ts":2})"});
        const auto r = load_corpus(dir.file("c.jsonl"));
        CHECK(r.posts.size() == 2);
        CHECK(r.skipped == 1);
    }
    SUBCASE("schema violations and duplicates") {
        write_lines(dir.file("c.jsonl"),
                    {kValidLine, kValidLine,
                     R"({"platform":"C","post_id":"p3","author":"bob","text":"x","mentions":[],"repost_of":null,"ts":2})",
                     R"({"platform":"A","post_id":"","author":"bob","text":"x","mentions":[],"repost_of":null,"ts":2})",
                     R"({"platform":"A","post_id":"p4","author":"bob","text":"x","mentions":[],"repost_of":null})",
                     R"({"platform":"A","post_id":"p5","author":"bob","text":"x","mentions":[3],"repost_of":null,"ts":2})", ""});
        const auto r = load_corpus(dir.file("c.jsonl"));
        CHECK(r.posts.size() == 1);
        CHECK(r.skipped == 5);
    }
    SUBCASE("empty file") {
        write_lines(dir.file("c.jsonl"), {});
        const auto r = load_corpus(dir.file("c.jsonl"));
        CHECK(r.posts.empty());
        CHECK(r.skipped == 0);
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(load_corpus(dir.file("nope.jsonl")), DataError); }
}

TEST_CASE("raw and processed corpora round-trip") {
    oracle::TempDir dir("corpus_rt");
    std::vector<RawPost> raw = {{Platform::A, "p1", "alice", "Hello \"quoted\" #Boston \xE2\x98\x95", {"bob"}, std::nullopt, 5},
                                {Platform::A, "p2", "bob", "RT @alice Hello #Boston", {}, std::string("p1"), 6}};
    write_raw_corpus(dir.file("raw.jsonl"), raw);
    const auto back = load_corpus(dir.file("raw.jsonl"));
    REQUIRE(back.posts.size() == 2);
    CHECK(back.posts[0].text == raw[0].text);
    CHECK(back.posts[1].repost_of == raw[1].repost_of);

    Corpus processed;
    for (const auto& r : raw) processed.push_back(preprocess(r, default_stopwords()));
    write_processed_corpus(dir.file("proc.jsonl"), processed);
    const auto again = load_processed_corpus(dir.file("proc.jsonl"));
    REQUIRE(again.size() == 2);
    CHECK(again[0].tokens == processed[0].tokens);
    CHECK(again[0].user_hashtags == processed[0].user_hashtags);
    CHECK(to_json_line(again[1]) == to_json_line(processed[1]));
}

TEST_CASE("custom stopword file") {
    oracle::TempDir dir("stop");
    write_lines(dir.file("s.txt"), {"# comment", "Foo", "", "bar"});
    const auto s = load_stopwords(dir.file("s.txt"));
    CHECK(s == StopwordSet{"foo", "bar"});
}
