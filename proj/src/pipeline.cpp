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
#include "hashlink/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "hashlink/corpus.hpp"
#include "hashlink/features.hpp"
#include "hashlink/hashtageval.hpp"
#include "hashlink/netgraph.hpp"

namespace hashlink::pipeline {

namespace fs = std::filesystem;

const char* annotator_name(Annotator a) { return a == Annotator::Topic ? "topic" : "community"; }

Annotator parse_annotator(const std::string& s) {
    if (s == "topic") return Annotator::Topic;
    if (s == "community") return Annotator::Community;
    throw ConfigError("annotator must be 'topic' or 'community', got '" + s + "'");
}

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw ConfigError(fmt::format("{}: cannot parse '{}'", key, text));
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError(fmt::format("{}: expected a boolean, got '{}'", key, text));
}

std::vector<std::size_t> parse_list(const std::string& key, const std::string& text) {
    std::vector<std::size_t> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(' '));
        item.erase(item.find_last_not_of(' ') + 1);
        if (!item.empty()) out.push_back(parse_number<std::size_t>(key, item));
    }
    if (out.empty()) throw ConfigError(key + ": empty list");
    return out;
}

std::string join_list(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

struct Binding {
    std::string key;
    std::function<std::string()> get;
    std::function<void(const std::string&)> set;
};

template <typename T>
Binding bind_key(std::string key, T& field) {
    Binding b;
    b.key = key;
    if constexpr (std::is_same_v<T, std::string>) {
        b.get = [&field] { return field; };
        b.set = [&field](const std::string& v) { field = v; };
    } else if constexpr (std::is_same_v<T, bool>) {
        b.get = [&field] { return std::string(field ? "true" : "false"); };
        b.set = [&field, key](const std::string& v) { field = parse_bool(key, v); };
    } else if constexpr (std::is_floating_point_v<T>) {
        b.get = [&field] { return fmt::format("{}", field); };
        b.set = [&field, key](const std::string& v) { field = parse_number<T>(key, v); };
    } else {
        b.get = [&field] { return std::to_string(field); };
        b.set = [&field, key](const std::string& v) { field = parse_number<T>(key, v); };
    }
    return b;
}

std::vector<Binding> bindings(PipelineConfig& c) {
    std::vector<Binding> b = {
        bind_key("paths.corpus_a", c.corpus_a),
        bind_key("paths.corpus_b", c.corpus_b),
        bind_key("paths.ground_truth", c.ground_truth),
        bind_key("paths.stopwords", c.stopwords),
        bind_key("paths.out_dir", c.out_dir),
        bind_key("pipeline.seed", c.seed),
        bind_key("synth.n_entities", c.synth.n_entities),
        bind_key("synth.cross_platform_fraction", c.synth.cross_platform_fraction),
        bind_key("synth.n_topics_true", c.synth.n_topics_true),
        bind_key("synth.vocab_size", c.synth.vocab_size),
        bind_key("synth.posts_per_user_min", c.synth.posts_per_user_min),
        bind_key("synth.posts_per_user_max", c.synth.posts_per_user_max),
        bind_key("synth.words_per_post_min", c.synth.words_per_post_min),
        bind_key("synth.words_per_post_max", c.synth.words_per_post_max),
        bind_key("synth.hashtag_rate", c.synth.hashtag_rate),
        bind_key("synth.mention_rate", c.synth.mention_rate),
        bind_key("synth.repost_rate", c.synth.repost_rate),
        bind_key("synth.username_perturbation_rate", c.synth.username_perturbation_rate),
        bind_key("synth.neighbor_overlap", c.synth.neighbor_overlap),
        bind_key("synth.collision_rate", c.synth.collision_rate),
        bind_key("synth.name_pool", c.synth.name_pool),
        bind_key("synth.core_fraction", c.synth.core_fraction),
        bind_key("synth.background_rate", c.synth.background_rate),
        bind_key("synth.primary_topic_weight", c.synth.primary_topic_weight),
        bind_key("synth.friends_min", c.synth.friends_min),
        bind_key("synth.friends_max", c.synth.friends_max),
        bind_key("synth.noise_rate", c.synth.noise_rate),
        bind_key("topics.n_topics", c.plsa.n_topics),
        bind_key("topics.max_iters", c.plsa.max_iters),
        bind_key("topics.tol", c.plsa.tol),
        bind_key("topics.min_count", c.topic_min_count),
        bind_key("topics.words_per_topic", c.words_per_topic),
        bind_key("wordgraph.min_count", c.word_min_count),
        bind_key("wordgraph.min_edge_count", c.min_edge_count),
        bind_key("wordgraph.words_per_community", c.words_per_community),
        bind_key("wordgraph.damping", c.pagerank.damping),
        bind_key("wordgraph.tol", c.pagerank.tol),
        bind_key("wordgraph.max_iters", c.pagerank.max_iters),
        bind_key("wordgraph.passes", c.community_passes),
        bind_key("wordgraph.trials", c.community_trials),
        bind_key("align.p", c.aggregation_p),
        bind_key("align.damping", c.align_damping),
        bind_key("align.passes", c.align_passes),
        bind_key("align.trials", c.align_trials),
        bind_key("features.community_hops", c.community_hops),
        bind_key("features.walk_length", c.walk_length),
        bind_key("trials.negatives_per_positive", c.trials.negatives_per_positive),
        bind_key("trials.hard_fraction", c.trials.hard_fraction),
        bind_key("trials.hard_jw_min", c.trials.hard_jw_min),
        bind_key("trials.train_fraction", c.trials.train_fraction),
        bind_key("forest.n_trees", c.forest.n_trees),
        bind_key("forest.max_depth", c.forest.max_depth),
        bind_key("forest.features_per_split", c.forest.features_per_split),
        bind_key("forest.min_samples_split", c.forest.min_samples_split),
    };
    b.push_back({"pipeline.annotator", [&c] { return std::string(annotator_name(c.annotator)); },
                 [&c](const std::string& v) { c.annotator = parse_annotator(v); }});
    b.push_back({"wordgraph.pagerank_scope",
                 [&c] {
                     return std::string(c.pagerank_scope == wordgraph::PageRankScope::Global ? "global" : "induced");
                 },
                 [&c](const std::string& v) {
                     if (v == "global") c.pagerank_scope = wordgraph::PageRankScope::Global;
                     else if (v == "induced") c.pagerank_scope = wordgraph::PageRankScope::InducedSubgraph;
                     else throw ConfigError("wordgraph.pagerank_scope must be 'induced' or 'global'");
                 }});
    b.push_back({"hashtageval.M_values", [&c] { return join_list(c.M_values); },
                 [&c](const std::string& v) { c.M_values = parse_list("hashtageval.M_values", v); }});
    b.push_back({"hashtageval.K_schedule", [&c] { return join_list(c.K_schedule); },
                 [&c](const std::string& v) { c.K_schedule = parse_list("hashtageval.K_schedule", v); }});
    return b;
}

void require(const std::string& path, const std::string& producer) {
    if (!fs::exists(path)) throw MissingArtifactError(path, producer);
}

corpus::Corpus load_union(const PipelineConfig& cfg) {
    require(cfg.artifact("processed_a.jsonl"), "preprocess");
    require(cfg.artifact("processed_b.jsonl"), "preprocess");
    auto all = corpus::load_processed_corpus(cfg.artifact("processed_a.jsonl"));
    auto b = corpus::load_processed_corpus(cfg.artifact("processed_b.jsonl"));
    all.insert(all.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
    return all;
}

std::vector<std::string> authors(const corpus::Corpus& posts) {
    std::set<std::string> s;
    for (const auto& p : posts) s.insert(p.author);
    return {s.begin(), s.end()};
}

std::optional<resolve::EerResult> try_eer(std::span<const double> scores, std::span<const resolve::Trial> trials,
                                          resolve::TrialSubset subset) {
    try {
        return resolve::compute_eer(scores, trials, subset);
    } catch (const ConfigError& e) {
        spdlog::warn("EER skipped: {}", e.what());
        return std::nullopt;
    }
}

}  // namespace

void PipelineConfig::set(const std::string& dotted_key, const std::string& value) {
    for (auto& b : bindings(*this)) {
        if (b.key == dotted_key) {
            b.set(value);
            return;
        }
    }
    throw ConfigError("unknown configuration key '" + dotted_key + "'");
}

PipelineConfig PipelineConfig::load(const std::string& path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(fmt::format("config '{}': {}", path, e.what()));
    }
    PipelineConfig cfg;
    for (const auto& [section, entries] : tree) {
        if (entries.empty()) throw ConfigError(fmt::format("config '{}': key '{}' outside a section", path, section));
        for (const auto& [key, node] : entries) cfg.set(section + "." + key, node.get_value<std::string>());
    }
    return cfg;
}

std::string PipelineConfig::dump() const {
    auto copy = *this;
    std::vector<std::pair<std::string, std::string>> sections;  // name, body
    for (const auto& b : bindings(copy)) {
        const auto dot = b.key.find('.');
        const std::string name = b.key.substr(0, dot);
        auto it = std::find_if(sections.begin(), sections.end(), [&](const auto& s) { return s.first == name; });
        if (it == sections.end()) it = sections.insert(sections.end(), {name, ""});
        it->second += fmt::format("{} = {}\n", b.key.substr(dot + 1), b.get());
    }
    std::string out;
    for (const auto& [name, body] : sections) out += (out.empty() ? "" : "\n") + fmt::format("[{}]\n", name) + body;
    return out;
}

std::string PipelineConfig::corpus_a_path() const {
    return corpus_a.empty() ? artifact("corpus_a.jsonl") : corpus_a;
}
std::string PipelineConfig::corpus_b_path() const {
    return corpus_b.empty() ? artifact("corpus_b.jsonl") : corpus_b;
}
std::string PipelineConfig::ground_truth_path() const {
    return ground_truth.empty() ? artifact("ground_truth.tsv") : ground_truth;
}
std::string PipelineConfig::artifact(const std::string& name) const { return (fs::path(out_dir) / name).string(); }

void run_synth(const PipelineConfig& cfg) {
    auto sc = cfg.synth;
    sc.seed = derive_seed(cfg.seed, "synth");
    const auto out = synthgen::generate(sc);
    fs::create_directories(cfg.out_dir);
    corpus::write_raw_corpus(cfg.corpus_a_path(), out.corpus_a);
    corpus::write_raw_corpus(cfg.corpus_b_path(), out.corpus_b);
    synthgen::write_ground_truth(cfg.ground_truth_path(), out.truth);
    spdlog::info("synth: {} A posts, {} B posts, {} true pairs", out.corpus_a.size(), out.corpus_b.size(),
                 out.truth.pairs.size());
}

void run_preprocess(const PipelineConfig& cfg) {
    const auto stop = cfg.stopwords.empty() ? corpus::default_stopwords() : corpus::load_stopwords(cfg.stopwords);
    fs::create_directories(cfg.out_dir);
    const std::pair<std::string, Platform> inputs[] = {{cfg.corpus_a_path(), Platform::A},
                                                       {cfg.corpus_b_path(), Platform::B}};
    for (const auto& [path, platform] : inputs) {
        require(path, "synth");
        const auto loaded = corpus::load_corpus(path);
        corpus::Corpus processed;
        processed.reserve(loaded.posts.size());
        for (const auto& raw : loaded.posts) {
            if (raw.platform != platform) {
                throw DataError(fmt::format("{}: post '{}' is from platform {}, expected {}", path, raw.post_id,
                                            platform_code(raw.platform), platform_code(platform)));
            }
            processed.push_back(corpus::preprocess(raw, stop));
        }
        const std::string name = platform == Platform::A ? "processed_a.jsonl" : "processed_b.jsonl";
        corpus::write_processed_corpus(cfg.artifact(name), processed);
        spdlog::info("preprocess: {} posts from {} ({} skipped)", processed.size(), path, loaded.skipped);
    }
}

void run_annotate(const PipelineConfig& cfg) {
    const auto posts = load_union(cfg);
    HashtagSet tags;
    if (cfg.annotator == Annotator::Topic) {
        const auto vocab = topics::build_vocabulary(posts, cfg.topic_min_count);
        const auto counts = topics::doc_term_counts(posts, vocab);
        auto opts = cfg.plsa;
        opts.seed = derive_seed(cfg.seed, "topics");
        const auto model = topics::fit_plsa(counts, opts);
        if (!model.converged) spdlog::warn("annotate: PLSA stopped at max_iters={}", opts.max_iters);
        topics::write_model(cfg.artifact("plsa_model.txt"), model, vocab);
        tags = topics::annotate_topic_hashtags(model, vocab, cfg.words_per_topic);
    } else {
        const auto vocab = topics::build_vocabulary(posts, cfg.word_min_count);
        const auto g = wordgraph::build_cooccurrence_graph(posts, vocab, cfg.min_edge_count);
        graph::write_edge_list(cfg.artifact("wordgraph.tsv"), g);
        const auto partition = wordgraph::detect_communities_mapeq(
            g, {derive_seed(cfg.seed, "wordgraph"), cfg.community_passes, cfg.community_trials});
        graph::write_partition(cfg.artifact("word_partition.tsv"), g.labels(), partition);
        tags = wordgraph::annotate_community_hashtags(g, partition, cfg.words_per_community, cfg.pagerank_scope,
                                                      cfg.pagerank);
    }
    topics::write_hashtags(cfg.artifact("hashtags.txt"), tags);
    spdlog::info("annotate[{}]: {} hashtags", annotator_name(cfg.annotator), tags.size());
}

void run_build_graph(const PipelineConfig& cfg) {
    require(cfg.artifact("hashtags.txt"), "annotate");
    require(cfg.artifact("processed_a.jsonl"), "preprocess");
    require(cfg.artifact("processed_b.jsonl"), "preprocess");
    const auto tags = topics::read_hashtags(cfg.artifact("hashtags.txt"));
    std::string stats;
    for (const char* side : {"a", "b"}) {
        const auto posts = corpus::load_processed_corpus(cfg.artifact(fmt::format("processed_{}.jsonl", side)));
        netgraph::BuildDiagnostics diag;
        const auto g = netgraph::build_graph(posts, tags, &diag);
        netgraph::write_graph(cfg.artifact(fmt::format("graph_{}.tsv", side)), g);
        stats += fmt::format("[graph_{}]\nunresolved_reposts: {}\nself_interactions: {}\n{}\n", side,
                             diag.unresolved_reposts, diag.self_interactions,
                             netgraph::format_stats(netgraph::graph_stats(g)));
    }
    std::ofstream(cfg.artifact("graph_stats.txt"), std::ios::binary) << stats;
}

void run_align(const PipelineConfig& cfg) {
    require(cfg.artifact("graph_a.tsv"), "build-graph");
    require(cfg.artifact("graph_b.tsv"), "build-graph");
    const auto ga = netgraph::read_graph(cfg.artifact("graph_a.tsv"), netgraph::GraphTag::A);
    const auto gb = netgraph::read_graph(cfg.artifact("graph_b.tsv"), netgraph::GraphTag::B);
    const auto seeds = align::find_seeds(ga, gb);
    const auto wa = ga.to_weighted();
    const auto wb = gb.to_weighted();
    const auto joined = align::aggregate_merge(wa, wb, seeds, cfg.aggregation_p);
    align::write_joined(cfg.artifact("joined.tsv"), joined);
    align::write_seed_manifest(cfg.artifact("seeds.tsv"), seeds, wa, wb);
    const auto cc = align::detect_cross_communities(
        joined, {derive_seed(cfg.seed, "align"), cfg.align_damping, cfg.align_passes, cfg.align_trials});
    graph::write_partition(cfg.artifact("communities.tsv"), joined.labels, cc.partition);
    spdlog::info("align: {} seeds, {} joined vertices, {} communities", seeds.size(), joined.size(),
                 cc.partition.n_communities);
}

void run_score(const PipelineConfig& cfg) {
    for (const char* f : {"graph_a.tsv", "graph_b.tsv"}) require(cfg.artifact(f), "build-graph");
    for (const char* f : {"joined.tsv", "seeds.tsv", "communities.tsv"}) require(cfg.artifact(f), "align");
    require(cfg.ground_truth_path(), "synth");
    const auto wa = netgraph::read_graph(cfg.artifact("graph_a.tsv"), netgraph::GraphTag::A).to_weighted();
    const auto wb = netgraph::read_graph(cfg.artifact("graph_b.tsv"), netgraph::GraphTag::B).to_weighted();
    const auto joined = align::read_joined(cfg.artifact("joined.tsv"), wa, wb,
                                            align::read_seed_manifest(cfg.artifact("seeds.tsv"), wa, wb));
    const auto partition = graph::read_partition(cfg.artifact("communities.tsv"), joined.labels);

    const auto users_a = authors(corpus::load_processed_corpus(cfg.artifact("processed_a.jsonl")));
    const auto users_b = authors(corpus::load_processed_corpus(cfg.artifact("processed_b.jsonl")));
    const std::set<std::string> known_a(users_a.begin(), users_a.end());
    const std::set<std::string> known_b(users_b.begin(), users_b.end());
    std::vector<std::pair<std::string, std::string>> matches;
    for (const auto& p : synthgen::read_ground_truth(cfg.ground_truth_path())) {
        if (known_a.contains(p.user_a) && known_b.contains(p.user_b)) matches.emplace_back(p.user_a, p.user_b);
    }
    auto topts = cfg.trials;
    topts.seed = derive_seed(cfg.seed, "trials");
    const auto split = resolve::make_trials(users_a, users_b, matches, topts);

    const auto ctx = resolve::make_scoring_context(wa, wb, joined, partition, cfg.community_hops, cfg.walk_length);
    const std::pair<const char*, const std::vector<resolve::Trial>*> sets[] = {{"train", &split.train},
                                                                               {"test", &split.test}};
    for (const auto& [name, trials] : sets) {
        resolve::write_trials(cfg.artifact(fmt::format("trials_{}.tsv", name)), *trials);
        resolve::write_scores(cfg.artifact(fmt::format("scores_{}.tsv", name)), *trials,
                              resolve::score_trials(*trials, ctx));
    }
    spdlog::info("score: {} train trials, {} test trials", split.train.size(), split.test.size());
}

void run_train(const PipelineConfig& cfg) {
    require(cfg.artifact("scores_train.tsv"), "score");
    const auto st = resolve::read_scores(cfg.artifact("scores_train.tsv"));
    auto fopts = cfg.forest;
    fopts.seed = derive_seed(cfg.seed, "forest");
    const auto model = resolve::train_fuser(st.scores, st.trials, fopts);
    resolve::write_forest(cfg.artifact("fuser.txt"), model);
    spdlog::info("train: {} trees, out-of-bag accuracy {:.4f}", model.trees.size(), model.oob_accuracy);
}

EvalReport run_eval_er(const PipelineConfig& cfg) {
    require(cfg.artifact("fuser.txt"), "train");
    require(cfg.artifact("scores_test.tsv"), "score");
    const auto model = resolve::read_forest(cfg.artifact("fuser.txt"));
    const auto st = resolve::read_scores(cfg.artifact("scores_test.tsv"));
    std::vector<double> jw, fused;
    std::vector<int> labels;
    for (std::size_t i = 0; i < st.trials.size(); ++i) {
        jw.push_back(st.scores[i].jw);
        fused.push_back(resolve::predict(model, st.scores[i]));
        labels.push_back(st.trials[i].label);
    }
    resolve::write_scores(cfg.artifact("scores_test_fused.tsv"), st.trials, st.scores, &fused);

    EvalReport r;
    r.jw_all = resolve::compute_eer(jw, st.trials, resolve::TrialSubset::All);
    r.fused_all = resolve::compute_eer(fused, st.trials, resolve::TrialSubset::All);
    r.jw_nt = try_eer(jw, st.trials, resolve::TrialSubset::NonTrivial);
    r.fused_nt = try_eer(fused, st.trials, resolve::TrialSubset::NonTrivial);
    resolve::write_det_csv(cfg.artifact("det_jw.csv"), resolve::det_curve(jw, labels));
    resolve::write_det_csv(cfg.artifact("det_fused.csv"), resolve::det_curve(fused, labels));

    const resolve::EerResult none{};
    std::ofstream report(cfg.artifact("eer_report.txt"), std::ios::binary);
    report << "annotator: " << annotator_name(cfg.annotator) << '\n'
           << resolve::format_eer("jw", r.jw_all, r.jw_nt.value_or(none))
           << resolve::format_eer("jw+comm+nbr", r.fused_all, r.fused_nt.value_or(none));
    if (!r.jw_nt) report << "NT subset lacks matches or non-matches; NT rows are placeholders\n";
    spdlog::info("eval-er: EER jw {:.4f}% fused {:.4f}% (ALL)", 100 * r.jw_all.eer, 100 * r.fused_all.eer);
    return r;
}

void run_eval_hashtags(const PipelineConfig& cfg) {
    const auto posts = load_union(cfg);
    hashtageval::Annotator annotate;
    if (cfg.annotator == Annotator::Topic) {
        require(cfg.artifact("plsa_model.txt"), "annotate --method topic");
        auto loaded = std::make_shared<topics::LoadedModel>(topics::read_model(cfg.artifact("plsa_model.txt")));
        annotate = [loaded](std::size_t k) { return topics::annotate_topic_hashtags(loaded->model, loaded->vocab, k); };
    } else {
        require(cfg.artifact("wordgraph.tsv"), "annotate --method community");
        require(cfg.artifact("word_partition.tsv"), "annotate --method community");
        const auto g = graph::read_edge_list(cfg.artifact("wordgraph.tsv"));
        const auto partition = graph::read_partition(cfg.artifact("word_partition.tsv"), g.labels());
        auto ranked = std::make_shared<std::vector<std::vector<std::string>>>(
            wordgraph::rank_community_words(g, partition, cfg.pagerank_scope, cfg.pagerank));
        annotate = [ranked](std::size_t k) { return wordgraph::take_top(*ranked, k); };
    }
    const auto points = hashtageval::sweep_curves(annotator_name(cfg.annotator), annotate, posts, cfg.M_values,
                                                  cfg.K_schedule);
    hashtageval::write_csv(cfg.artifact("hashtag_pr.csv"), points);
    spdlog::info("eval-hashtags: {} grid points", points.size());
}

EvalReport run_all(const PipelineConfig& cfg) {
    if (cfg.corpus_a.empty() && cfg.corpus_b.empty()) run_synth(cfg);
    run_preprocess(cfg);
    run_annotate(cfg);
    run_build_graph(cfg);
    run_align(cfg);
    run_score(cfg);
    run_train(cfg);
    auto report = run_eval_er(cfg);
    run_eval_hashtags(cfg);
    return report;
}

}  // namespace hashlink::pipeline
