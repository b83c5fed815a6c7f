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

// Data-parallel inner loops used by the topic model, the word graph and
// PageRank. Each OpenMP kernel has a plain serial reference next to it; the
// two are checked against each other in tests and compared in bench/.
//
// The parallel kernels are deterministic for any thread count: work is split
// by output element and every reduction runs in a fixed order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

namespace hashlink::kernels {

/// Compressed sparse rows of nonnegative counts.
struct SparseCounts {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<std::size_t> offsets{0};  // n_rows + 1 entries
    std::vector<std::uint32_t> cols;
    std::vector<double> values;

    std::size_t nnz() const { return cols.size(); }
    double total() const;
};

/// Column-major view of a SparseCounts: for each column, the rows it appears
/// in and the position of that entry in the row-major arrays.
struct ColumnIndex {
    std::vector<std::size_t> offsets;
    std::vector<std::uint32_t> rows;
    std::vector<std::size_t> positions;

    static ColumnIndex build(const SparseCounts& m);
};

/// Aspect-model parameters. Matrices are topic-major.
struct PlsaParams {
    std::size_t n_topics = 0;
    std::size_t n_docs = 0;
    std::size_t n_words = 0;
    std::vector<double> p_c;          // [topic]
    std::vector<double> p_w_given_c;  // [topic * n_words + word]
    std::vector<double> p_d_given_c;  // [topic * n_docs + doc]

    static PlsaParams zeros(std::size_t n_topics, std::size_t n_docs, std::size_t n_words);
};

/// Unnormalized M-step statistics.
struct PlsaStats {
    std::vector<double> word_mass;  // [topic * n_words + word]
    std::vector<double> doc_mass;   // [topic * n_docs + doc]
};

/// One E-step at `cur`. Returns the corpus log-likelihood of `cur`.
double plsa_estep_serial(const SparseCounts& docs, const PlsaParams& cur, PlsaStats& stats);
double plsa_estep(const SparseCounts& docs, const ColumnIndex& words, const PlsaParams& cur,
                  PlsaStats& stats);

/// Normalizes statistics into `next`. A topic that received no mass keeps
/// its previous distributions with prior zero.
void plsa_mstep(const PlsaStats& stats, double total_count, const PlsaParams& cur, PlsaParams& next);

/// Row-stochastic transition rows; an empty row marks a dangling vertex.
struct TransitionRows {
    std::size_t n = 0;
    std::vector<std::size_t> offsets{0};
    std::vector<std::uint32_t> targets;
    std::vector<double> probs;
};

/// Incoming-edge form of TransitionRows for pull-style iteration.
struct IncomingRows {
    std::size_t n = 0;
    std::vector<std::size_t> offsets;
    std::vector<std::uint32_t> sources;
    std::vector<double> probs;
    std::vector<std::uint32_t> dangling;

    static IncomingRows build(const TransitionRows& rows);
};

/// next = (1-d)/n + d * (P^T s + dangling_mass/n)
void pagerank_step_serial(const TransitionRows& rows, std::span<const double> s, double damping,
                          std::span<double> next);
void pagerank_step(const IncomingRows& in, std::span<const double> s, double damping,
                   std::span<double> next);

/// Sorted (u, v, count) with u < v: per-post co-occurrence counts over sets
/// of sorted, unique word ids.
using PairCounts = std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>>;

PairCounts cooccurrence_counts_serial(const std::vector<std::vector<std::uint32_t>>& posts);
PairCounts cooccurrence_counts(const std::vector<std::vector<std::uint32_t>>& posts);

/// Number of OpenMP worker threads the kernels will use.
int max_threads();
void set_threads(int n);

}  // namespace hashlink::kernels
