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
#include "hashlink/kernels.hpp"

namespace hashlink::kernels {

IncomingRows IncomingRows::build(const TransitionRows& rows) {
    IncomingRows in;
    in.n = rows.n;
    in.offsets.assign(rows.n + 1, 0);
    for (auto t : rows.targets) ++in.offsets[t + 1];
    for (std::size_t v = 0; v < rows.n; ++v) in.offsets[v + 1] += in.offsets[v];
    in.sources.resize(rows.targets.size());
    in.probs.resize(rows.targets.size());
    std::vector<std::size_t> fill(in.offsets.begin(), in.offsets.end() - 1);
    for (std::size_t u = 0; u < rows.n; ++u) {
        if (rows.offsets[u] == rows.offsets[u + 1]) in.dangling.push_back(static_cast<std::uint32_t>(u));
        for (std::size_t k = rows.offsets[u]; k < rows.offsets[u + 1]; ++k) {
            const std::size_t slot = fill[rows.targets[k]]++;
            in.sources[slot] = static_cast<std::uint32_t>(u);
            in.probs[slot] = rows.probs[k];
        }
    }
    return in;
}

void pagerank_step(const IncomingRows& in, std::span<const double> s, double damping,
                   std::span<double> next) {
    const std::size_t n = in.n;
    double dangling_mass = 0.0;
    for (auto u : in.dangling) dangling_mass += s[u];
    const double base = (1.0 - damping) / static_cast<double>(n) +
                        damping * dangling_mass / static_cast<double>(n);
    const auto nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t vi = 0; vi < nn; ++vi) {
        const auto v = static_cast<std::size_t>(vi);
        double acc = 0.0;
        for (std::size_t k = in.offsets[v]; k < in.offsets[v + 1]; ++k) acc += in.probs[k] * s[in.sources[k]];
        next[v] = base + damping * acc;
    }
}

}  // namespace hashlink::kernels
