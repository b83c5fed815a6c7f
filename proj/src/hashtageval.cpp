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
#include "hashlink/hashtageval.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace hashlink::hashtageval {

std::vector<std::string> top_user_hashtags(std::span<const corpus::ProcessedPost> corpus, std::size_t M) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& post : corpus) {
        for (const auto& tag : post.user_hashtags) ++counts[tag];
    }
    std::vector<std::pair<std::string, std::uint64_t>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
    if (ranked.size() < M) {
        spdlog::warn("only {} distinct user hashtags, fewer than M={}", ranked.size(), M);
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < std::min(M, ranked.size()); ++i) out.push_back(ranked[i].first);
    return out;
}

HashtagEvalPoint precision_recall(const HashtagSet& automatic, std::span<const std::string> user_top) {
    if (automatic.empty() || user_top.empty()) {
        throw ConfigError("precision/recall needs non-empty automatic and user hashtag lists");
    }
    HashtagEvalPoint p;
    p.K = automatic.size();
    p.M = user_top.size();
    for (const auto& w : user_top) p.tp += automatic.contains(w);
    p.precision = static_cast<double>(p.tp) / static_cast<double>(p.K);
    p.recall = static_cast<double>(p.tp) / static_cast<double>(p.M);
    return p;
}

std::vector<HashtagEvalPoint> sweep_curves(const std::string& method, const Annotator& annotator,
                                           std::span<const corpus::ProcessedPost> corpus,
                                           std::span<const std::size_t> M_values,
                                           std::span<const std::size_t> K_schedule) {
    std::vector<HashtagSet> automatic;
    automatic.reserve(K_schedule.size());
    for (std::size_t k : K_schedule) automatic.push_back(annotator(k));
    std::vector<HashtagEvalPoint> out;
    for (std::size_t M : M_values) {
        const auto user_top = top_user_hashtags(corpus, M);
        for (const auto& set : automatic) {
            if (set.empty() || user_top.empty()) continue;
            auto p = precision_recall(set, user_top);
            p.method = method;
            out.push_back(std::move(p));
        }
    }
    return out;
}

void write_csv(const std::string& path, std::span<const HashtagEvalPoint> points) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "method,M,K,tp,precision,recall\n";
    for (const auto& p : points) {
        out << fmt::format("{},{},{},{},{:.17g},{:.17g}\n", p.method, p.M, p.K, p.tp, p.precision, p.recall);
    }
}

}  // namespace hashlink::hashtageval
