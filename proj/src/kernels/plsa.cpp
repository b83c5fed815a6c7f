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
#include <cmath>

#include <omp.h>

#include "hashlink/kernels.hpp"

namespace hashlink::kernels {

double SparseCounts::total() const {
    double t = 0.0;
    for (double v : values) t += v;
    return t;
}

ColumnIndex ColumnIndex::build(const SparseCounts& m) {
    ColumnIndex idx;
    idx.offsets.assign(m.n_cols + 1, 0);
    for (auto c : m.cols) ++idx.offsets[c + 1];
    for (std::size_t c = 0; c < m.n_cols; ++c) idx.offsets[c + 1] += idx.offsets[c];
    idx.rows.resize(m.nnz());
    idx.positions.resize(m.nnz());
    std::vector<std::size_t> fill(idx.offsets.begin(), idx.offsets.end() - 1);
    for (std::size_t r = 0; r < m.n_rows; ++r) {
        for (std::size_t k = m.offsets[r]; k < m.offsets[r + 1]; ++k) {
            const std::size_t slot = fill[m.cols[k]]++;
            idx.rows[slot] = static_cast<std::uint32_t>(r);
            idx.positions[slot] = k;
        }
    }
    return idx;
}

PlsaParams PlsaParams::zeros(std::size_t n_topics, std::size_t n_docs, std::size_t n_words) {
    PlsaParams p;
    p.n_topics = n_topics;
    p.n_docs = n_docs;
    p.n_words = n_words;
    p.p_c.assign(n_topics, 0.0);
    p.p_w_given_c.assign(n_topics * n_words, 0.0);
    p.p_d_given_c.assign(n_topics * n_docs, 0.0);
    return p;
}

double plsa_estep(const SparseCounts& docs, const ColumnIndex& words, const PlsaParams& cur,
                  PlsaStats& stats) {
    const std::size_t K = cur.n_topics;
    const std::size_t D = cur.n_docs;
    const std::size_t V = cur.n_words;
    stats.word_mass.assign(K * V, 0.0);
    stats.doc_mass.assign(K * D, 0.0);

    // Pass 1, by document: mixture denominators, per-document likelihood and
    // document mass. Each document owns its outputs.
    std::vector<double> denom(docs.nnz());
    std::vector<double> doc_ll(D, 0.0);
    const auto n_docs = static_cast<std::int64_t>(D);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t di = 0; di < n_docs; ++di) {
        const auto d = static_cast<std::size_t>(di);
        double ll = 0.0;
        for (std::size_t k = docs.offsets[d]; k < docs.offsets[d + 1]; ++k) {
            const std::size_t w = docs.cols[k];
            double z = 0.0;
            for (std::size_t c = 0; c < K; ++c) {
                z += cur.p_c[c] * cur.p_d_given_c[c * D + d] * cur.p_w_given_c[c * V + w];
            }
            denom[k] = z;
            ll += docs.values[k] * std::log(z);
            if (z > 0.0) {
                const double scale = docs.values[k] / z;
                for (std::size_t c = 0; c < K; ++c) {
                    stats.doc_mass[c * D + d] +=
                        scale * cur.p_c[c] * cur.p_d_given_c[c * D + d] * cur.p_w_given_c[c * V + w];
                }
            }
        }
        doc_ll[d] = ll;
    }

    // Pass 2, by word, in fixed document order.
    const auto n_words = static_cast<std::int64_t>(V);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t wi = 0; wi < n_words; ++wi) {
        const auto w = static_cast<std::size_t>(wi);
        for (std::size_t j = words.offsets[w]; j < words.offsets[w + 1]; ++j) {
            const std::size_t d = words.rows[j];
            const std::size_t k = words.positions[j];
            if (!(denom[k] > 0.0)) continue;
            const double scale = docs.values[k] / denom[k];
            for (std::size_t c = 0; c < K; ++c) {
                stats.word_mass[c * V + w] +=
                    scale * cur.p_c[c] * cur.p_d_given_c[c * D + d] * cur.p_w_given_c[c * V + w];
            }
        }
    }

    double ll = 0.0;
    for (double x : doc_ll) ll += x;
    return ll;
}

void plsa_mstep(const PlsaStats& stats, double total_count, const PlsaParams& cur, PlsaParams& next) {
    const std::size_t K = cur.n_topics;
    const std::size_t D = cur.n_docs;
    const std::size_t V = cur.n_words;
    next = PlsaParams::zeros(K, D, V);
    for (std::size_t c = 0; c < K; ++c) {
        double wsum = 0.0;
        for (std::size_t w = 0; w < V; ++w) wsum += stats.word_mass[c * V + w];
        double dsum = 0.0;
        for (std::size_t d = 0; d < D; ++d) dsum += stats.doc_mass[c * D + d];
        if (!(wsum > 0.0) || !(dsum > 0.0)) {
            std::copy_n(cur.p_w_given_c.begin() + static_cast<std::ptrdiff_t>(c * V), V,
                        next.p_w_given_c.begin() + static_cast<std::ptrdiff_t>(c * V));
            std::copy_n(cur.p_d_given_c.begin() + static_cast<std::ptrdiff_t>(c * D), D,
                        next.p_d_given_c.begin() + static_cast<std::ptrdiff_t>(c * D));
            next.p_c[c] = 0.0;
            continue;
        }
        for (std::size_t w = 0; w < V; ++w) next.p_w_given_c[c * V + w] = stats.word_mass[c * V + w] / wsum;
        for (std::size_t d = 0; d < D; ++d) next.p_d_given_c[c * D + d] = stats.doc_mass[c * D + d] / dsum;
        next.p_c[c] = dsum / total_count;
    }
    // Renormalize the prior: the column sums equal the total count only up to rounding.
    double psum = 0.0;
    for (double x : next.p_c) psum += x;
    if (psum > 0.0) {
        for (double& x : next.p_c) x /= psum;
    }
}

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
}

}  // namespace hashlink::kernels
