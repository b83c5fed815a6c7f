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
#include "hashlink/resolve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <limits>

#include <fmt/format.h>

#include "hashlink/common.hpp"
#include "hashlink/features.hpp"

namespace hashlink::resolve {

Trial Trial::make(std::string a, std::string b, int label) {
    Trial t;
    t.nontrivial = a != b;
    t.user_a = std::move(a);
    t.user_b = std::move(b);
    t.label = label;
    return t;
}

namespace {

double jaro_ordered(std::string_view s, std::string_view t) {
    if (s == t) return 1.0;
    if (s.empty() || t.empty()) return 0.0;
    const std::size_t longest = std::max(s.size(), t.size());
    const std::size_t window = longest / 2 >= 1 ? longest / 2 - 1 : 0;
    std::vector<bool> s_matched(s.size(), false);
    std::vector<bool> t_matched(t.size(), false);
    std::size_t matches = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::size_t lo = i >= window ? i - window : 0;
        const std::size_t hi = std::min(t.size(), i + window + 1);
        for (std::size_t j = lo; j < hi; ++j) {
            if (!t_matched[j] && s[i] == t[j]) {
                s_matched[i] = true;
                t_matched[j] = true;
                ++matches;
                break;
            }
        }
    }
    if (matches == 0) return 0.0;
    std::size_t out_of_order = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s_matched[i]) continue;
        while (!t_matched[j]) ++j;
        if (s[i] != t[j]) ++out_of_order;
        ++j;
    }
    const double m = static_cast<double>(matches);
    const double transpositions = static_cast<double>(out_of_order) / 2.0;
    return (m / static_cast<double>(s.size()) + m / static_cast<double>(t.size()) + (m - transpositions) / m) / 3.0;
}

}  // namespace

// Arguments are put in a fixed order first so the result is exactly symmetric.
double jaro(std::string_view s, std::string_view t) { return s <= t ? jaro_ordered(s, t) : jaro_ordered(t, s); }

double jaro_winkler(std::string_view s, std::string_view t) {
    const double j = jaro(s, t);
    std::size_t prefix = 0;
    while (prefix < 4 && prefix < s.size() && prefix < t.size() && s[prefix] == t[prefix]) ++prefix;
    return std::min(1.0, j + static_cast<double>(prefix) * 0.1 * (1.0 - j));
}

ScoringContext make_scoring_context(const graph::WeightedGraph& a, const graph::WeightedGraph& b,
                                    const align::JoinedGraph& joined, const graph::Partition& joined_partition,
                                    std::size_t community_hops, std::size_t walk_length) {
    ScoringContext ctx;
    ctx.graph_a = &a;
    ctx.graph_b = &b;
    ctx.joined = &joined;
    ctx.community_hops = community_hops;
    ctx.walk_length = walk_length;
    ctx.community_a.resize(a.num_vertices());
    ctx.community_b.resize(b.num_vertices());
    for (std::size_t v = 0; v < a.num_vertices(); ++v) ctx.community_a[v] = joined_partition.membership[joined.from_a[v]];
    for (std::size_t v = 0; v < b.num_vertices(); ++v) ctx.community_b[v] = joined_partition.membership[joined.from_b[v]];
    return ctx;
}

ScoreVector score_trial(const Trial& trial, const ScoringContext& ctx) {
    ScoreVector s;
    s.jw = jaro_winkler(trial.user_a, trial.user_b);
    const auto va = ctx.graph_a->find("U:A:" + trial.user_a);
    const auto vb = ctx.graph_b->find("U:B:" + trial.user_b);
    if (!va || !vb) return s;
    const auto ca = features::community_feature(*ctx.graph_a, ctx.community_a, *va, ctx.community_hops);
    const auto cb = features::community_feature(*ctx.graph_b, ctx.community_b, *vb, ctx.community_hops);
    s.comm_sim = features::cosine_similarity(ca, cb);
    const auto na = features::neighborhood_feature(*ctx.joined, ctx.joined->from_a[*va], ctx.walk_length);
    const auto nb = features::neighborhood_feature(*ctx.joined, ctx.joined->from_b[*vb], ctx.walk_length);
    s.nbr_sim = features::neighborhood_similarity(na, nb);
    return s;
}

std::vector<ScoreVector> score_trials(const std::vector<Trial>& trials, const ScoringContext& ctx) {
    std::vector<ScoreVector> out(trials.size());
    const auto n = static_cast<std::int64_t>(trials.size());
#pragma omp parallel for schedule(dynamic, 32)
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = score_trial(trials[static_cast<std::size_t>(i)], ctx);
    return out;
}

FusionModel train_fuser(std::span<const ScoreVector> scores, std::span<const Trial> trials,
                        const ForestOptions& options) {
    std::vector<FeatureRow> rows;
    std::vector<int> labels;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        rows.push_back(scores[i].as_row());
        labels.push_back(trials[i].label);
    }
    return train_forest(rows, labels, options);
}

double predict(const FusionModel& model, const ScoreVector& score) { return predict(model, score.as_row()); }

namespace {

struct Staircase {
    std::vector<DetPoint> points;
    std::size_t targets = 0;
    std::size_t nontargets = 0;
};

Staircase staircase(std::span<const double> scores, std::span<const int> labels) {
    Staircase st;
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });
    for (int l : labels) (l == 1 ? st.targets : st.nontargets)++;
    if (st.targets == 0 || st.nontargets == 0) {
        throw ConfigError("EER needs both target and non-target trials");
    }
    const double P = static_cast<double>(st.targets);
    const double N = static_cast<double>(st.nontargets);
    std::size_t targets_below = 0;
    std::size_t nontargets_below = 0;
    for (std::size_t i = 0; i < order.size();) {
        const double t = scores[order[i]];
        st.points.push_back({t, static_cast<double>(targets_below) / P,
                             static_cast<double>(st.nontargets - nontargets_below) / N});
        while (i < order.size() && scores[order[i]] == t) {
            (labels[order[i]] == 1 ? targets_below : nontargets_below)++;
            ++i;
        }
    }
    return st;
}

}  // namespace

std::vector<DetPoint> det_curve(std::span<const double> scores, std::span<const int> labels) {
    return staircase(scores, labels).points;
}

EerResult compute_eer(std::span<const double> scores, std::span<const int> labels) {
    Staircase st = staircase(scores, labels);
    auto& pts = st.points;
    // Threshold above every score: every target missed, no false alarm.
    pts.push_back({std::numeric_limits<double>::infinity(), 1.0, 0.0});
    EerResult r;
    r.targets = st.targets;
    r.nontargets = st.nontargets;
    for (std::size_t j = 1; j < pts.size(); ++j) {
        if (pts[j].miss_rate < pts[j].fa_rate) continue;
        if (pts[j].miss_rate == pts[j].fa_rate) {
            r.eer = pts[j].miss_rate;
            r.threshold = pts[j].threshold;
            r.interpolated = false;
        } else {
            const auto& a = pts[j - 1];
            const auto& b = pts[j];
            const double gap0 = a.fa_rate - a.miss_rate;
            const double gap1 = b.miss_rate - b.fa_rate;
            const double lambda = gap0 / (gap0 + gap1);
            r.eer = a.miss_rate + lambda * (b.miss_rate - a.miss_rate);
            r.threshold = std::isfinite(b.threshold) ? a.threshold + lambda * (b.threshold - a.threshold) : a.threshold;
            r.interpolated = true;
        }
        break;
    }
    if (std::isinf(r.threshold)) r.threshold = pts[pts.size() - 2].threshold;
    return r;
}

EerResult compute_eer(std::span<const double> scores, std::span<const Trial> trials, TrialSubset subset) {
    std::vector<double> s;
    std::vector<int> l;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        if (subset == TrialSubset::NonTrivial && !trials[i].nontrivial) continue;
        s.push_back(scores[i]);
        l.push_back(trials[i].label);
    }
    return compute_eer(s, l);
}

TrialSplit make_trials(const std::vector<std::string>& users_a, const std::vector<std::string>& users_b,
                       const std::vector<std::pair<std::string, std::string>>& matches, const TrialOptions& options) {
    std::set<std::string> matched_a;
    std::set<std::string> matched_b;
    std::set<std::pair<std::string, std::string>> match_set(matches.begin(), matches.end());
    for (const auto& [a, b] : matches) {
        matched_a.insert(a);
        matched_b.insert(b);
    }
    // Entity = a true pair or a single unmatched account.
    struct Entity {
        std::optional<std::string> a, b;
    };
    std::vector<Entity> entities;
    for (const auto& [a, b] : matches) entities.push_back({a, b});
    std::set<std::string> only_a(users_a.begin(), users_a.end());
    std::set<std::string> only_b(users_b.begin(), users_b.end());
    for (const auto& a : only_a) {
        if (!matched_a.contains(a)) entities.push_back({a, std::nullopt});
    }
    for (const auto& b : only_b) {
        if (!matched_b.contains(b)) entities.push_back({std::nullopt, b});
    }
    Rng rng(options.seed);
    for (std::size_t i = entities.size(); i > 1; --i) std::swap(entities[i - 1], entities[uniform_index(rng, i)]);
    const auto n_train = static_cast<std::size_t>(std::floor(options.train_fraction * static_cast<double>(entities.size())));

    auto build = [&](std::span<const Entity> part) {
        std::vector<std::string> sa, sb;
        std::vector<std::pair<std::string, std::string>> positives;
        for (const auto& e : part) {
            if (e.a) sa.push_back(*e.a);
            if (e.b) sb.push_back(*e.b);
            if (e.a && e.b) positives.emplace_back(*e.a, *e.b);
        }
        std::vector<Trial> trials;
        std::set<std::pair<std::string, std::string>> used;
        auto add = [&](const std::string& a, const std::string& b, int label) {
            if (used.emplace(a, b).second) trials.push_back(Trial::make(a, b, label));
        };
        for (const auto& [a, b] : positives) add(a, b, 1);
        if (sa.empty() || sb.empty()) return trials;

        // Same username, different entity.
        std::set<std::string> names_b(sb.begin(), sb.end());
        for (const auto& a : sa) {
            if (names_b.contains(a) && !match_set.contains({a, a})) add(a, a, 0);
        }
        const auto n_hard = static_cast<std::size_t>(
            std::llround(options.hard_fraction * static_cast<double>(options.negatives_per_positive)));
        for (const auto& [a, b] : positives) {
            std::vector<const std::string*> hard;
            for (const auto& cand : sb) {
                if (cand != b && !match_set.contains({a, cand}) && jaro_winkler(a, cand) >= options.hard_jw_min) {
                    hard.push_back(&cand);
                }
            }
            std::size_t drawn = 0;
            for (std::size_t i = 0; i < hard.size() && drawn < n_hard; ++i, ++drawn) {
                std::swap(hard[i], hard[i + uniform_index(rng, hard.size() - i)]);
                add(a, *hard[i], 0);
            }
            for (std::size_t tries = 0; drawn < options.negatives_per_positive && tries < 20 * options.negatives_per_positive; ++tries) {
                const auto& ra = sa[uniform_index(rng, sa.size())];
                const auto& rb = sb[uniform_index(rng, sb.size())];
                if (match_set.contains({ra, rb}) || used.contains({ra, rb})) continue;
                add(ra, rb, 0);
                ++drawn;
            }
        }
        return trials;
    };
    TrialSplit split;
    split.train = build(std::span<const Entity>(entities).first(n_train));
    split.test = build(std::span<const Entity>(entities).subspan(n_train));
    return split;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> f;
    std::istringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) f.push_back(field);
    return f;
}

int parse_label(const std::string& s, const std::string& where) {
    if (s == "1") return 1;
    if (s == "0") return 0;
    throw DataError(where + ": label must be 0 or 1");
}

}  // namespace

void write_trials(const std::string& path, const std::vector<Trial>& trials) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (const auto& t : trials) out << t.user_a << '\t' << t.user_b << '\t' << t.label << '\n';
}

std::vector<Trial> read_trials(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open trials '" + path + "'");
    std::vector<Trial> trials;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_tabs(line);
        const std::string where = fmt::format("{}:{}", path, line_no);
        if (f.size() != 3) throw DataError(where + ": expected 3 fields");
        trials.push_back(Trial::make(f[0], f[1], parse_label(f[2], where)));
    }
    return trials;
}

void write_scores(const std::string& path, const std::vector<Trial>& trials, const std::vector<ScoreVector>& scores,
                  const std::vector<double>* fused) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& t = trials[i];
        out << t.user_a << '\t' << t.user_b << '\t' << t.label << '\t' << graph::format_double(scores[i].jw) << '\t'
            << graph::format_double(scores[i].comm_sim) << '\t' << graph::format_double(scores[i].nbr_sim);
        if (fused) out << '\t' << graph::format_double((*fused)[i]);
        out << '\n';
    }
}

ScoredTrials read_scores(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open scores '" + path + "'");
    ScoredTrials st;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_tabs(line);
        const std::string where = fmt::format("{}:{}", path, line_no);
        if (f.size() < 6) throw DataError(where + ": expected at least 6 fields");
        st.trials.push_back(Trial::make(f[0], f[1], parse_label(f[2], where)));
        st.scores.push_back({std::strtod(f[3].c_str(), nullptr), std::strtod(f[4].c_str(), nullptr),
                             std::strtod(f[5].c_str(), nullptr)});
    }
    return st;
}

void write_det_csv(const std::string& path, const std::vector<DetPoint>& det) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "threshold,miss_rate,fa_rate\n";
    for (const auto& p : det) {
        out << graph::format_double(p.threshold) << ',' << graph::format_double(p.miss_rate) << ','
            << graph::format_double(p.fa_rate) << '\n';
    }
}

std::string format_eer(const std::string& system, const EerResult& all, const EerResult& nt) {
    auto line = [](const char* subset, const EerResult& r) {
        return fmt::format("  {:<4} eer={:.4f}% threshold={} interpolated={} targets={} nontargets={}\n", subset,
                           100.0 * r.eer, graph::format_double(r.threshold), r.interpolated ? "yes" : "no", r.targets,
                           r.nontargets);
    };
    return fmt::format("[{}]\n", system) + line("ALL", all) + line("NT", nt);
}

}  // namespace hashlink::resolve
