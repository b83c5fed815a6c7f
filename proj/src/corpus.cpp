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
#include "hashlink/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "json.hpp"
#include <spdlog/spdlog.h>
#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace hashlink::corpus {

extern const char* const kBundledStopwords;  // generated from data/stopwords_en.txt

namespace {

using json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 40> kEmoticons = {
    ":)", ":-)", ":(", ":-(", ";)", ";-)", ":d", ":-d", ":p", ":-p",
    ":o", ":-o", ":'(", ":/", ":-/", ":|", ":-|", "<3", "</3", "^_^",
    "^^", "-_-", "=)", "=(", "=d", "(:", "):", ":*", ":-*", "xd",
    ";p", "8)", ":3", "o_o", "t_t", ">_<", ":]", ":[", ":@", ";d"};

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_emoji_like(UChar32 c) {
    if (c == 0xFFFD) return true;  // decoder replacement for invalid bytes
    if (c == 0x200D || (c >= 0xFE00 && c <= 0xFE0F)) return true;
    if ((c >= 0x1F000 && c <= 0x1FAFF) || (c >= 0x2600 && c <= 0x27BF)) return true;
    if (c >= 0xE0020 && c <= 0xE007F) return true;
    if (c < 0x80) return false;  // '^' and '`' are Sk but belong to emoticons/words
    const auto type = static_cast<UCharCategory>(u_charType(c));
    return type == U_OTHER_SYMBOL || type == U_MODIFIER_SYMBOL;
}

bool is_punct(UChar32 c) {
    if (c < 0x80) return c > 0x20 && c < 0x7f && !std::isalnum(static_cast<unsigned char>(c));
    return u_ispunct(c) != 0;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_ascii_space(s[i])) ++i;
        std::size_t j = i;
        while (j < s.size() && !is_ascii_space(s[j])) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

bool is_url(std::string_view tok) {
    return tok.find("http://") != std::string_view::npos ||
           tok.find("https://") != std::string_view::npos || tok.starts_with("www.");
}

bool is_emoticon(std::string_view tok) {
    return std::find(kEmoticons.begin(), kEmoticons.end(), tok) != kEmoticons.end();
}

// "great:)" -> "great"; leaves tokens such as "boxd" alone.
std::string strip_emoticon_suffix(std::string tok) {
    for (std::string_view e : kEmoticons) {
        if (std::isalnum(static_cast<unsigned char>(e.front()))) continue;
        if (tok.size() > e.size() + 1 && std::string_view(tok).ends_with(e)) {
            tok.resize(tok.size() - e.size());
            return tok;
        }
    }
    return tok;
}

std::size_t codepoint_count(std::string_view s) {
    std::size_t n = 0;
    std::int32_t i = 0;
    const auto len = static_cast<std::int32_t>(s.size());
    while (i < len) {
        UChar32 c;
        U8_NEXT(s.data(), i, len, c);
        ++n;
    }
    return n;
}

// Strips leading and trailing punctuation code points.
std::string_view strip_edges(std::string_view s) {
    const auto len = static_cast<std::int32_t>(s.size());
    std::int32_t begin = 0;
    while (begin < len) {
        std::int32_t next = begin;
        UChar32 c;
        U8_NEXT(s.data(), next, len, c);
        if (!is_punct(c)) break;
        begin = next;
    }
    std::int32_t end = len;
    while (end > begin) {
        std::int32_t prev = end;
        UChar32 c;
        U8_PREV(s.data(), 0, prev, c);
        if (!is_punct(c)) break;
        end = prev;
    }
    return s.substr(static_cast<std::size_t>(begin), static_cast<std::size_t>(end - begin));
}

}  // namespace

const StopwordSet& default_stopwords() {
    static const StopwordSet words = [] {
        StopwordSet s;
        std::istringstream in(kBundledStopwords);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.front() != '#') s.insert(line);
        }
        return s;
    }();
    return words;
}

StopwordSet load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open stopword file '" + path + "'");
    StopwordSet s;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        s.insert(normalize_text(line));
    }
    return s;
}

std::string normalize_text(std::string_view raw) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfkc = icu::Normalizer2::getNFKCInstance(status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU NFKC normalizer unavailable");

    icu::UnicodeString text = icu::UnicodeString::fromUTF8(
        icu::StringPiece(raw.data(), static_cast<std::int32_t>(raw.size())));
    icu::UnicodeString normalized = nfkc->normalize(text, status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");
    normalized.toLower(icu::Locale::getRoot());

    icu::UnicodeString filtered;
    for (std::int32_t i = 0; i < normalized.length(); i = normalized.moveIndex32(i, 1)) {
        const UChar32 c = normalized.char32At(i);
        if (is_emoji_like(c) || u_isUWhiteSpace(c) || u_iscntrl(c)) {
            filtered.append(static_cast<UChar>(' '));
        } else {
            filtered.append(c);
        }
    }
    std::string utf8;
    filtered.toUTF8String(utf8);

    std::vector<std::string> tokens = split_ws(utf8);
    if (tokens.size() >= 2 && tokens[0] == "rt" && tokens[1].starts_with('@')) {
        tokens.erase(tokens.begin(), tokens.begin() + 2);
    }
    std::string out;
    for (auto& tok : tokens) {
        if (is_url(tok) || is_emoticon(tok)) continue;
        tok = strip_emoticon_suffix(std::move(tok));
        if (!out.empty()) out.push_back(' ');
        out += tok;
    }
    return out;
}

TokenizeResult tokenize_and_filter(std::string_view normalized, const StopwordSet& stopwords) {
    TokenizeResult result;
    for (const std::string& raw : split_ws(normalized)) {
        if (is_url(raw)) continue;
        // Leading punctuation does not hide a hashtag or mention: "(#boston)".
        std::string_view rest = raw;
        while (!rest.empty() && rest.front() != '#' && rest.front() != '@' && static_cast<unsigned char>(rest.front()) < 0x80 &&
               is_punct(static_cast<unsigned char>(rest.front()))) {
            rest.remove_prefix(1);
        }
        if (rest.starts_with('@')) continue;
        const bool hashtag = rest.starts_with('#');

        std::string word;
        for (char c : strip_edges(rest)) {
            if (c != '#') word.push_back(c);
        }
        word = std::string(strip_edges(word));
        if (codepoint_count(word) < 2 || stopwords.contains(word)) continue;
        if (hashtag) result.user_hashtags.insert(word);
        result.tokens.push_back(std::move(word));
    }
    return result;
}

ProcessedPost preprocess(const RawPost& post, const StopwordSet& stopwords) {
    ProcessedPost out;
    out.platform = post.platform;
    out.post_id = post.post_id;
    out.author = post.author;
    out.text = post.text;
    out.mentioned_users = post.mentioned_users;
    out.repost_of = post.repost_of;
    out.timestamp = post.timestamp;
    auto [tokens, tags] = tokenize_and_filter(normalize_text(post.text), stopwords);
    out.tokens = std::move(tokens);
    out.user_hashtags = std::move(tags);
    return out;
}

std::string reassemble(const ProcessedPost& post) {
    std::string out;
    for (const auto& tok : post.tokens) {
        if (!out.empty()) out.push_back(' ');
        if (post.user_hashtags.contains(tok)) out.push_back('#');
        out += tok;
    }
    return out;
}

namespace {

json raw_fields(Platform platform, const std::string& post_id, const std::string& author,
                const std::string& text, const std::vector<std::string>& mentions,
                const std::optional<std::string>& repost_of, std::int64_t ts) {
    json j;
    j["platform"] = std::string(1, platform_code(platform));
    j["post_id"] = post_id;
    j["author"] = author;
    j["text"] = text;
    j["mentions"] = mentions;
    j["repost_of"] = repost_of ? json(*repost_of) : json(nullptr);
    j["ts"] = ts;
    return j;
}

// Returns nullopt with a reason when the record does not match the schema.
std::optional<RawPost> parse_record(const json& j, std::string& why) {
    static constexpr std::array<std::string_view, 7> kFields = {
        "platform", "post_id", "author", "text", "mentions", "repost_of", "ts"};
    if (!j.is_object()) {
        why = "not an object";
        return std::nullopt;
    }
    for (auto f : kFields) {
        if (!j.contains(std::string(f))) {
            why = "missing field '" + std::string(f) + "'";
            return std::nullopt;
        }
    }
    RawPost p;
    const auto& platform = j["platform"];
    if (!platform.is_string() || (platform != "A" && platform != "B")) {
        why = "platform must be \"A\" or \"B\"";
        return std::nullopt;
    }
    p.platform = parse_platform(platform.get<std::string>());
    if (!j["post_id"].is_string() || !j["author"].is_string() || !j["text"].is_string()) {
        why = "post_id, author and text must be strings";
        return std::nullopt;
    }
    p.post_id = j["post_id"].get<std::string>();
    p.author = j["author"].get<std::string>();
    p.text = j["text"].get<std::string>();
    if (p.post_id.empty() || p.author.empty()) {
        why = "empty post_id or author";
        return std::nullopt;
    }
    if (!j["mentions"].is_array()) {
        why = "mentions must be an array";
        return std::nullopt;
    }
    for (const auto& m : j["mentions"]) {
        if (!m.is_string()) {
            why = "mentions must hold strings";
            return std::nullopt;
        }
        p.mentioned_users.push_back(m.get<std::string>());
    }
    const auto& repost = j["repost_of"];
    if (repost.is_string()) {
        p.repost_of = repost.get<std::string>();
    } else if (!repost.is_null()) {
        why = "repost_of must be a string or null";
        return std::nullopt;
    }
    if (!j["ts"].is_number_integer()) {
        why = "ts must be an integer";
        return std::nullopt;
    }
    p.timestamp = j["ts"].get<std::int64_t>();
    return p;
}

}  // namespace

CorpusReader::CorpusReader(const std::string& path) : in_(path), path_(path) {
    if (!in_) throw DataError("cannot open corpus file '" + path + "'");
}

std::optional<RawPost> CorpusReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (std::all_of(line.begin(), line.end(), [](char c) { return is_ascii_space(c); })) continue;
        std::string why;
        std::optional<RawPost> post;
        try {
            post = parse_record(json::parse(line), why);
        } catch (const json::exception& e) {
            why = e.what();
        }
        if (post && !seen_.emplace(post->platform, post->post_id).second) {
            why = "duplicate post_id '" + post->post_id + "'";
            post.reset();
        }
        if (post) return post;
        ++skipped_;
        spdlog::warn("{}:{}: skipping malformed record: {}", path_, line_no_, why);
    }
    return std::nullopt;
}

LoadResult load_corpus(const std::string& path) {
    CorpusReader reader(path);
    LoadResult result;
    while (auto post = reader.next()) result.posts.push_back(std::move(*post));
    result.skipped = reader.skipped();
    if (result.skipped > 0) {
        spdlog::warn("{}: loaded {} records, skipped {} malformed", path, result.posts.size(),
                     result.skipped);
    }
    return result;
}

std::string to_json_line(const RawPost& p) {
    return raw_fields(p.platform, p.post_id, p.author, p.text, p.mentioned_users, p.repost_of,
                      p.timestamp)
        .dump();
}

std::string to_json_line(const ProcessedPost& p) {
    json j = raw_fields(p.platform, p.post_id, p.author, p.text, p.mentioned_users, p.repost_of,
                        p.timestamp);
    j["tokens"] = p.tokens;
    j["user_hashtags"] = std::vector<std::string>(p.user_hashtags.begin(), p.user_hashtags.end());
    return j.dump();
}

namespace {

template <typename Post>
void write_lines(const std::string& path, const std::vector<Post>& posts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (const auto& p : posts) out << to_json_line(p) << '\n';
}

}  // namespace

void write_raw_corpus(const std::string& path, const std::vector<RawPost>& posts) {
    write_lines(path, posts);
}

void write_processed_corpus(const std::string& path, const Corpus& posts) {
    write_lines(path, posts);
}

Corpus load_processed_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open processed corpus '" + path + "'");
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            std::string why;
            auto raw = parse_record(j, why);
            if (!raw) throw DataError(why);
            ProcessedPost p;
            p.platform = raw->platform;
            p.post_id = std::move(raw->post_id);
            p.author = std::move(raw->author);
            p.text = std::move(raw->text);
            p.mentioned_users = std::move(raw->mentioned_users);
            p.repost_of = std::move(raw->repost_of);
            p.timestamp = raw->timestamp;
            p.tokens = j.at("tokens").get<std::vector<std::string>>();
            for (auto& t : j.at("user_hashtags").get<std::vector<std::string>>()) {
                p.user_hashtags.insert(std::move(t));
            }
            corpus.push_back(std::move(p));
        } catch (const std::exception& e) {
            throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return corpus;
}

}  // namespace hashlink::corpus
