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
#include "hashlink/topics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace hashlink::topics {

std::optional<std::uint32_t> Vocabulary::find(const std::string& word) const {
    auto it = index.find(word);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

Vocabulary build_vocabulary(const corpus::Corpus& corpus, std::uint64_t min_count) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& post : corpus) {
        for (const auto& tok : post.tokens) ++counts[tok];
    }
    std::vector<std::pair<std::string, std::uint64_t>> kept;
    for (auto& [w, c] : counts) {
        if (c >= min_count) kept.emplace_back(w, c);
    }
    if (kept.empty()) {
        throw ConfigError(fmt::format("empty vocabulary: no word occurs at least {} times", min_count));
    }
    std::stable_sort(kept.begin(), kept.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    Vocabulary vocab;
    vocab.min_count = min_count;
    for (auto& [w, c] : kept) {
        vocab.index.emplace(w, static_cast<std::uint32_t>(vocab.words.size()));
        vocab.words.push_back(w);
        vocab.counts.push_back(c);
    }
    return vocab;
}

kernels::SparseCounts doc_term_counts(const corpus::Corpus& corpus, const Vocabulary& vocab) {
    kernels::SparseCounts m;
    m.n_rows = corpus.size();
    m.n_cols = vocab.size();
    m.offsets.reserve(corpus.size() + 1);
    std::map<std::uint32_t, double> row;
    for (const auto& post : corpus) {
        row.clear();
        for (const auto& tok : post.tokens) {
            if (auto id = vocab.find(tok)) row[*id] += 1.0;
        }
        for (const auto& [w, c] : row) {
            m.cols.push_back(w);
            m.values.push_back(c);
        }
        m.offsets.push_back(m.cols.size());
    }
    return m;
}

namespace {

kernels::PlsaParams initial_params(const kernels::SparseCounts& counts, const PlsaOptions& opt) {
    const std::size_t K = opt.n_topics;
    const std::size_t D = counts.n_rows;
    const std::size_t V = counts.n_cols;

    Rng rng(opt.seed);
    std::vector<double> resp(K * V);  // word-major: p(c | w) shared by every document
    for (std::size_t w = 0; w < V; ++w) {
        double z = 0.0;
        for (std::size_t c = 0; c < K; ++c) {
            resp[w * K + c] = 1.0 - uniform01(rng);  // (0, 1]
            z += resp[w * K + c];
        }
        for (std::size_t c = 0; c < K; ++c) resp[w * K + c] /= z;
    }

    kernels::PlsaStats stats;
    stats.word_mass.assign(K * V, 0.0);
    stats.doc_mass.assign(K * D, 0.0);
    for (std::size_t d = 0; d < D; ++d) {
        for (std::size_t k = counts.offsets[d]; k < counts.offsets[d + 1]; ++k) {
            const std::size_t w = counts.cols[k];
            for (std::size_t c = 0; c < K; ++c) {
                const double r = counts.values[k] * resp[w * K + c];
                stats.word_mass[c * V + w] += r;
                stats.doc_mass[c * D + d] += r;
            }
        }
    }
    // Uniform fallback rows for the degenerate case handled in plsa_mstep.
    kernels::PlsaParams uniform = kernels::PlsaParams::zeros(K, D, V);
    std::fill(uniform.p_w_given_c.begin(), uniform.p_w_given_c.end(), 1.0 / static_cast<double>(V));
    std::fill(uniform.p_d_given_c.begin(), uniform.p_d_given_c.end(), 1.0 / static_cast<double>(D));
    kernels::PlsaParams params;
    kernels::plsa_mstep(stats, counts.total(), uniform, params);
    return params;
}

}  // namespace

PlsaModel fit_plsa(const kernels::SparseCounts& counts, const PlsaOptions& options) {
    if (options.n_topics < 1) throw ConfigError("n_topics must be at least 1");
    const double total = counts.total();
    if (!(total > 0.0)) throw ConfigError("document-term matrix has no nonzero counts");

    PlsaModel model;
    model.params = initial_params(counts, options);
    const kernels::ColumnIndex columns = kernels::ColumnIndex::build(counts);

    kernels::PlsaStats stats;
    kernels::PlsaParams next;
    for (std::size_t it = 1; it <= options.max_iters; ++it) {
        const double ll = options.parallel ? kernels::plsa_estep(counts, columns, model.params, stats)
                                           : kernels::plsa_estep_serial(counts, model.params, stats);
        if (!std::isfinite(ll)) {
            throw NumericalError(fmt::format("PLSA log-likelihood became non-finite at iteration {}", it));
        }
        model.loglik_trace.push_back(ll);
        model.iterations = it;
        if (model.loglik_trace.size() >= 2) {
            const double prev = model.loglik_trace[model.loglik_trace.size() - 2];
            if (std::abs(ll - prev) < options.tol * std::abs(prev)) {
                model.converged = true;
                break;
            }
        }
        if (it == options.max_iters) break;  // keep the parameters the last entry describes
        kernels::plsa_mstep(stats, total, model.params, next);
        std::swap(model.params, next);
    }
    return model;
}

std::vector<RankedWords> top_words_per_topic(const PlsaModel& model, const Vocabulary& vocab,
                                             std::size_t words_per_topic) {
    const std::size_t V = model.params.n_words;
    const std::size_t n = std::min(words_per_topic, V);
    std::vector<RankedWords> out(model.n_topics());
    std::vector<std::uint32_t> order(V);
    for (std::size_t c = 0; c < model.n_topics(); ++c) {
        for (std::size_t w = 0; w < V; ++w) order[w] = static_cast<std::uint32_t>(w);
        auto better = [&](std::uint32_t a, std::uint32_t b) {
            const double pa = model.p_w_given_c(c, a);
            const double pb = model.p_w_given_c(c, b);
            if (pa != pb) return pa > pb;
            return vocab.words[a] < vocab.words[b];
        };
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(), better);
        for (std::size_t i = 0; i < n; ++i) out[c].emplace_back(vocab.words[order[i]], model.p_w_given_c(c, order[i]));
    }
    return out;
}

HashtagSet annotate_topic_hashtags(const PlsaModel& model, const Vocabulary& vocab,
                                   std::size_t words_per_topic) {
    HashtagSet tags;
    for (const auto& ranked : top_words_per_topic(model, vocab, words_per_topic)) {
        for (const auto& [word, p] : ranked) tags.insert(word);
    }
    return tags;
}

void write_model(const std::string& path, const PlsaModel& model, const Vocabulary& vocab) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    const auto& p = model.params;
    out << "plsa_model 1\n";
    out << "n_topics " << p.n_topics << "\n";
    out << "n_words " << p.n_words << "\n";
    out << "iterations " << model.iterations << "\n";
    out << "loglik " << fmt::format("{:.17g}", model.loglik_trace.empty() ? 0.0 : model.loglik_trace.back())
        << "\n";
    out << "vocabulary\n";
    for (std::size_t w = 0; w < vocab.size(); ++w) out << vocab.words[w] << '\t' << vocab.counts[w] << '\n';
    out << "p_c\n";
    for (std::size_t c = 0; c < p.n_topics; ++c) out << (c ? " " : "") << fmt::format("{:.17g}", p.p_c[c]);
    out << "\np_w_given_c\n";
    for (std::size_t c = 0; c < p.n_topics; ++c) {
        for (std::size_t w = 0; w < p.n_words; ++w) {
            out << (w ? " " : "") << fmt::format("{:.17g}", p.p_w_given_c[c * p.n_words + w]);
        }
        out << '\n';
    }
}

namespace {

double read_double(std::istream& in) {
    std::string tok;
    in >> tok;
    // strtod rather than operator>>: subnormal probabilities must round-trip.
    return std::strtod(tok.c_str(), nullptr);
}

void expect(std::istream& in, const std::string& key, const std::string& path) {
    std::string tok;
    if (!(in >> tok) || tok != key) throw DataError(path + ": expected '" + key + "'");
}

}  // namespace

LoadedModel read_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model '" + path + "'");
    LoadedModel lm;
    auto& p = lm.model.params;
    int version = 0;
    double loglik = 0.0;
    expect(in, "plsa_model", path);
    in >> version;
    expect(in, "n_topics", path);
    in >> p.n_topics;
    expect(in, "n_words", path);
    in >> p.n_words;
    expect(in, "iterations", path);
    in >> lm.model.iterations;
    expect(in, "loglik", path);
    in >> loglik;
    expect(in, "vocabulary", path);
    if (!in || version != 1) throw DataError(path + ": bad model header");
    lm.model.loglik_trace = {loglik};
    for (std::size_t w = 0; w < p.n_words; ++w) {
        std::string word;
        std::uint64_t count = 0;
        if (!(in >> word >> count)) throw DataError(path + ": truncated vocabulary");
        lm.vocab.index.emplace(word, static_cast<std::uint32_t>(w));
        lm.vocab.words.push_back(word);
        lm.vocab.counts.push_back(count);
    }
    lm.vocab.min_count = lm.vocab.counts.empty() ? 1 : lm.vocab.counts.back();
    expect(in, "p_c", path);
    p.p_c.resize(p.n_topics);
    for (auto& x : p.p_c) x = read_double(in);
    expect(in, "p_w_given_c", path);
    p.p_w_given_c.resize(p.n_topics * p.n_words);
    for (auto& x : p.p_w_given_c) x = read_double(in);
    if (!in) throw DataError(path + ": truncated model");
    return lm;
}

void write_hashtags(const std::string& path, const HashtagSet& tags) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (const auto& t : tags) out << t << '\n';
}

HashtagSet read_hashtags(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open hashtag list '" + path + "'");
    HashtagSet tags;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) tags.insert(line);
    }
    return tags;
}

}  // namespace hashlink::topics
