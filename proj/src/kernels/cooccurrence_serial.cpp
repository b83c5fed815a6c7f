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
#include <map>

#include "hashlink/kernels.hpp"

namespace hashlink::kernels {

PairCounts cooccurrence_counts_serial(const std::vector<std::vector<std::uint32_t>>& posts) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts;
    for (const auto& words : posts) {
        for (std::size_t i = 0; i < words.size(); ++i) {
            for (std::size_t j = i + 1; j < words.size(); ++j) ++counts[{words[i], words[j]}];
        }
    }
    PairCounts out;
    out.reserve(counts.size());
    for (const auto& [uv, c] : counts) out.emplace_back(uv.first, uv.second, c);
    return out;
}

}  // namespace hashlink::kernels
