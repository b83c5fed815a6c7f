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

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hashlink/common.hpp"

namespace hashlink::corpus {

struct RawPost {
    Platform platform = Platform::A;
    std::string post_id;
    std::string author;
    std::string text;
    std::vector<std::string> mentioned_users;
    std::optional<std::string> repost_of;
    std::int64_t timestamp = 0;
};

struct ProcessedPost {
    Platform platform = Platform::A;
    std::string post_id;
    std::string author;
    std::string text;  // raw text, carried for export
    std::vector<std::string> mentioned_users;
    std::optional<std::string> repost_of;
    std::int64_t timestamp = 0;

    std::vector<std::string> tokens;
    std::set<std::string> user_hashtags;
};

using Corpus = std::vector<ProcessedPost>;
using StopwordSet = std::unordered_set<std::string>;

/// The bundled English stopword list.
const StopwordSet& default_stopwords();

/// One word per line; blank lines and lines starting with '#' are ignored.
StopwordSet load_stopwords(const std::string& path);

/// NFKC + lowercase, then strips emoji, ASCII emoticons, URLs and a leading
/// "rt @user" repost marker. Output tokens are separated by single spaces.
std::string normalize_text(std::string_view raw);

struct TokenizeResult {
    std::vector<std::string> tokens;
    std::set<std::string> user_hashtags;
};

/// Expects normalized input. Tokens shorter than two code points, stopwords,
/// @mentions and URL-like tokens are dropped; hash marks are removed and the
/// words that carried one are reported as user hashtags.
TokenizeResult tokenize_and_filter(std::string_view normalized, const StopwordSet& stopwords);

ProcessedPost preprocess(const RawPost& post, const StopwordSet& stopwords);

/// Tokens joined by spaces, user hashtags re-prefixed with '#'.
std::string reassemble(const ProcessedPost& post);

/// Streaming reader for the line-delimited JSON post format. Malformed lines
/// (bad JSON, missing or mistyped fields, empty ids, duplicate post ids per
/// platform) are skipped with a warning and counted.
class CorpusReader {
public:
    explicit CorpusReader(const std::string& path);

    std::optional<RawPost> next();

    std::size_t skipped() const { return skipped_; }
    std::size_t line_number() const { return line_no_; }

private:
    std::ifstream in_;
    std::string path_;
    std::size_t line_no_ = 0;
    std::size_t skipped_ = 0;
    std::set<std::pair<Platform, std::string>> seen_;
};

struct LoadResult {
    std::vector<RawPost> posts;
    std::size_t skipped = 0;
};

/// Throws DataError when the file cannot be opened.
LoadResult load_corpus(const std::string& path);

std::string to_json_line(const RawPost& post);
std::string to_json_line(const ProcessedPost& post);

void write_raw_corpus(const std::string& path, const std::vector<RawPost>& posts);
void write_processed_corpus(const std::string& path, const Corpus& posts);

/// Reads a file produced by write_processed_corpus. Any malformed line is a
/// DataError since these files are produced by this toolkit.
Corpus load_processed_corpus(const std::string& path);

}  // namespace hashlink::corpus
