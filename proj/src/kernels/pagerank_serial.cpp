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

#include "hashlink/kernels.hpp"

namespace hashlink::kernels {

// Push formulation: each vertex scatters its damped mass along its out-row.
void pagerank_step_serial(const TransitionRows& rows, std::span<const double> s, double damping,
                          std::span<double> next) {
    const std::size_t n = rows.n;
    std::fill(next.begin(), next.end(), 0.0);
    double dangling_mass = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        if (rows.offsets[u] == rows.offsets[u + 1]) {
            dangling_mass += s[u];
            continue;
        }
        for (std::size_t k = rows.offsets[u]; k < rows.offsets[u + 1]; ++k) {
            next[rows.targets[k]] += damping * rows.probs[k] * s[u];
        }
    }
    const double base = (1.0 - damping) / static_cast<double>(n) +
                        damping * dangling_mass / static_cast<double>(n);
    for (auto& x : next) x += base;
}

}  // namespace hashlink::kernels
