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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hashlink/common.hpp"
#include "hashlink/corpus.hpp"

namespace hashlink::hashtageval {

struct HashtagEvalPoint {
    std::string method;
    std::size_t K = 0;
    std::size_t M = 0;
    std::size_t tp = 0;
    double precision = 0.0;
    double recall = 0.0;
};

/// User hashtags ranked by the number of posts carrying them, ties
/// lexicographic. Returns fewer than M (with a warning) when the corpus runs out.
std::vector<std::string> top_user_hashtags(std::span<const corpus::ProcessedPost> corpus, std::size_t M);

/// Throws ConfigError when either side is empty.
HashtagEvalPoint precision_recall(const HashtagSet& automatic, std::span<const std::string> user_top);

/// Annotator called with a per-cluster word count, returns the selected set.
using Annotator = std::function<HashtagSet(std::size_t)>;

/// One point per (M, per-cluster count). M is reported as the length of the
/// user list actually available.
std::vector<HashtagEvalPoint> sweep_curves(const std::string& method, const Annotator& annotator,
                                           std::span<const corpus::ProcessedPost> corpus,
                                           std::span<const std::size_t> M_values,
                                           std::span<const std::size_t> K_schedule);

void write_csv(const std::string& path, std::span<const HashtagEvalPoint> points);

}  // namespace hashlink::hashtageval
