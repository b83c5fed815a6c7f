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
#include <cmath>

#include "hashlink/kernels.hpp"

namespace hashlink::kernels {

// Direct transcription of the E-step: one responsibility vector per nonzero
// count, accumulated in row-major order.
double plsa_estep_serial(const SparseCounts& docs, const PlsaParams& cur, PlsaStats& stats) {
    const std::size_t K = cur.n_topics;
    const std::size_t D = cur.n_docs;
    const std::size_t V = cur.n_words;
    stats.word_mass.assign(K * V, 0.0);
    stats.doc_mass.assign(K * D, 0.0);
    std::vector<double> joint(K);
    double ll = 0.0;
    for (std::size_t d = 0; d < D; ++d) {
        for (std::size_t k = docs.offsets[d]; k < docs.offsets[d + 1]; ++k) {
            const std::size_t w = docs.cols[k];
            double z = 0.0;
            for (std::size_t c = 0; c < K; ++c) {
                joint[c] = cur.p_c[c] * cur.p_d_given_c[c * D + d] * cur.p_w_given_c[c * V + w];
                z += joint[c];
            }
            ll += docs.values[k] * std::log(z);
            if (!(z > 0.0)) continue;
            for (std::size_t c = 0; c < K; ++c) {
                const double r = docs.values[k] * joint[c] / z;
                stats.word_mass[c * V + w] += r;
                stats.doc_mass[c * D + d] += r;
            }
        }
    }
    return ll;
}

}  // namespace hashlink::kernels
