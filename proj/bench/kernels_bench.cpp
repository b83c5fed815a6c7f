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
// Serial reference kernels against their OpenMP counterparts.
//
//   ./build/bench/kernels_bench --benchmark_filter=Plsa

#include <algorithm>
#include <random>

#include <benchmark/benchmark.h>

#include "hashlink/kernels.hpp"

using namespace hashlink::kernels;

namespace {

SparseCounts random_docs(std::size_t docs, std::size_t words, std::size_t per_doc) {
    std::mt19937_64 rng(1);
    SparseCounts m;
    m.n_rows = docs;
    m.n_cols = words;
    for (std::size_t d = 0; d < docs; ++d) {
        std::vector<std::uint32_t> ids;
        for (std::size_t k = 0; k < per_doc; ++k) ids.push_back(static_cast<std::uint32_t>(rng() % words));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        for (auto w : ids) {
            m.cols.push_back(w);
            m.values.push_back(1.0 + static_cast<double>(rng() % 3));
        }
        m.offsets.push_back(m.cols.size());
    }
    return m;
}

PlsaParams random_params(std::size_t topics, std::size_t docs, std::size_t words) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    auto p = PlsaParams::zeros(topics, docs, words);
    for (auto& x : p.p_c) x = 1.0 / static_cast<double>(topics);
    for (std::size_t c = 0; c < topics; ++c) {
        double sw = 0.0, sd = 0.0;
        for (std::size_t w = 0; w < words; ++w) sw += p.p_w_given_c[c * words + w] = u(rng);
        for (std::size_t d = 0; d < docs; ++d) sd += p.p_d_given_c[c * docs + d] = u(rng);
        for (std::size_t w = 0; w < words; ++w) p.p_w_given_c[c * words + w] /= sw;
        for (std::size_t d = 0; d < docs; ++d) p.p_d_given_c[c * docs + d] /= sd;
    }
    return p;
}

TransitionRows random_rows(std::size_t n, std::size_t degree) {
    std::mt19937_64 rng(3);
    TransitionRows r;
    r.n = n;
    for (std::size_t u = 0; u < n; ++u) {
        std::vector<std::uint32_t> t;
        for (std::size_t k = 0; k < degree; ++k) t.push_back(static_cast<std::uint32_t>(rng() % n));
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        for (auto v : t) {
            r.targets.push_back(v);
            r.probs.push_back(1.0 / static_cast<double>(t.size()));
        }
        r.offsets.push_back(r.targets.size());
    }
    return r;
}

std::vector<std::vector<std::uint32_t>> random_posts(std::size_t posts, std::size_t words, std::size_t per_post) {
    std::mt19937_64 rng(4);
    std::vector<std::vector<std::uint32_t>> out(posts);
    for (auto& p : out) {
        for (std::size_t k = 0; k < per_post; ++k) p.push_back(static_cast<std::uint32_t>(rng() % words));
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
    }
    return out;
}

constexpr std::size_t kDocs = 20000, kWords = 3000, kTopics = 50;

void BM_PlsaEstepSerial(benchmark::State& state) {
    const auto docs = random_docs(kDocs, kWords, 10);
    const auto params = random_params(kTopics, kDocs, kWords);
    PlsaStats stats;
    for (auto _ : state) benchmark::DoNotOptimize(plsa_estep_serial(docs, params, stats));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * docs.nnz()));
}

void BM_PlsaEstepParallel(benchmark::State& state) {
    set_threads(static_cast<int>(state.range(0)));
    const auto docs = random_docs(kDocs, kWords, 10);
    const auto index = ColumnIndex::build(docs);
    const auto params = random_params(kTopics, kDocs, kWords);
    PlsaStats stats;
    for (auto _ : state) benchmark::DoNotOptimize(plsa_estep(docs, index, params, stats));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * docs.nnz()));
}

void BM_PageRankStepSerial(benchmark::State& state) {
    const auto rows = random_rows(200000, 8);
    std::vector<double> s(rows.n, 1.0 / static_cast<double>(rows.n)), next(rows.n);
    for (auto _ : state) {
        pagerank_step_serial(rows, s, 0.85, next);
        benchmark::DoNotOptimize(next.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * rows.targets.size()));
}

void BM_PageRankStepParallel(benchmark::State& state) {
    set_threads(static_cast<int>(state.range(0)));
    const auto rows = random_rows(200000, 8);
    const auto in = IncomingRows::build(rows);
    std::vector<double> s(rows.n, 1.0 / static_cast<double>(rows.n)), next(rows.n);
    for (auto _ : state) {
        pagerank_step(in, s, 0.85, next);
        benchmark::DoNotOptimize(next.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * rows.targets.size()));
}

void BM_CooccurrenceSerial(benchmark::State& state) {
    const auto posts = random_posts(50000, 5000, 10);
    for (auto _ : state) benchmark::DoNotOptimize(cooccurrence_counts_serial(posts));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * posts.size()));
}

void BM_CooccurrenceParallel(benchmark::State& state) {
    set_threads(static_cast<int>(state.range(0)));
    const auto posts = random_posts(50000, 5000, 10);
    for (auto _ : state) benchmark::DoNotOptimize(cooccurrence_counts(posts));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * posts.size()));
}

}  // namespace

BENCHMARK(BM_PlsaEstepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlsaEstepParallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PageRankStepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PageRankStepParallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CooccurrenceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CooccurrenceParallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
