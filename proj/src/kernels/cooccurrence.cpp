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
#include <utility>
#include <vector>

#include <omp.h>

#include "hashlink/kernels.hpp"

namespace hashlink::kernels {

namespace {

std::uint64_t pair_key(std::uint32_t u, std::uint32_t v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

using KeyCounts = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

KeyCounts run_length(std::vector<std::uint64_t>& keys) {
    std::sort(keys.begin(), keys.end());
    KeyCounts out;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        out.emplace_back(keys[i], j - i);
        i = j;
    }
    return out;
}

KeyCounts merge_runs(const KeyCounts& a, const KeyCounts& b) {
    KeyCounts out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

PairCounts cooccurrence_counts(const std::vector<std::vector<std::uint32_t>>& posts) {
    const int n_threads = omp_get_max_threads();
    std::vector<KeyCounts> local(static_cast<std::size_t>(n_threads));
    const auto n_posts = static_cast<std::int64_t>(posts.size());
#pragma omp parallel
    {
        std::vector<std::uint64_t> keys;
#pragma omp for schedule(dynamic, 256) nowait
        for (std::int64_t p = 0; p < n_posts; ++p) {
            const auto& words = posts[static_cast<std::size_t>(p)];
            for (std::size_t i = 0; i < words.size(); ++i) {
                for (std::size_t j = i + 1; j < words.size(); ++j) keys.push_back(pair_key(words[i], words[j]));
            }
        }
        local[static_cast<std::size_t>(omp_get_thread_num())] = run_length(keys);
    }
    // Integer counts over sorted keys: the merge order does not affect the result.
    KeyCounts merged;
    for (const auto& run : local) merged = merge_runs(merged, run);
    PairCounts out;
    out.reserve(merged.size());
    for (const auto& [k, c] : merged) {
        out.emplace_back(static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k & 0xffffffffU), c);
    }
    return out;
}

}  // namespace hashlink::kernels
