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
#include "hashlink/synthgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "hashlink/common.hpp"

namespace hashlink::synthgen {

namespace {

constexpr std::string_view kConsonants = "bcdfghjklmnprstvz";
constexpr std::string_view kVowels = "aeiou";
constexpr std::int64_t kBaseTimestamp = 1700000000;

const std::array<std::string_view, 4> kEmoji = {"\xF0\x9F\x98\x80", "\xE2\x98\x95", "\xF0\x9F\x8E\x89",
                                                "\xE2\x9D\xA4\xEF\xB8\x8F"};
const std::array<std::string_view, 4> kEmoticons = {":)", ":-(", ";-)", ":D"};

void check_rate(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(fmt::format("synth: {} must be in [0,1], got {}", name, v));
}

std::string syllables(Rng& rng, std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
        s += kConsonants[uniform_index(rng, kConsonants.size())];
        s += kVowels[uniform_index(rng, kVowels.size())];
    }
    return s;
}

/// Cumulative weights with inverse-CDF sampling.
class Categorical {
public:
    Categorical() = default;
    explicit Categorical(std::vector<double> weights) : cdf_(std::move(weights)) {
        double acc = 0.0;
        for (double& w : cdf_) {
            acc += w;
            w = acc;
        }
    }
    bool empty() const { return cdf_.empty(); }
    std::size_t sample(Rng& rng) const {
        const double u = uniform01(rng) * cdf_.back();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
    }

private:
    std::vector<double> cdf_;
};

struct TopicModel {
    std::vector<std::vector<std::uint32_t>> cores;
    std::vector<Categorical> core_dist;
    std::vector<std::uint32_t> background;
    Categorical background_dist;
};

std::size_t uniform_between(Rng& rng, std::size_t lo, std::size_t hi) { return lo + uniform_index(rng, hi - lo + 1); }

std::string perturb(Rng& rng, const std::string& name) {
    std::string s = name;
    switch (uniform_index(rng, 3)) {
        case 0: {
            if (s.size() < 2) break;
            const std::size_t i = uniform_index(rng, s.size() - 1);
            std::swap(s[i], s[i + 1]);
            break;
        }
        case 1:
            if (s.size() > 4) s.erase(uniform_index(rng, s.size()), 1);
            break;
        default: {
            const std::string_view pool = "0123456789_x";
            s += pool[uniform_index(rng, pool.size())];
        }
    }
    return s;
}

}  // namespace

void SynthConfig::validate() const {
    check_rate(cross_platform_fraction, "cross_platform_fraction");
    check_rate(hashtag_rate, "hashtag_rate");
    check_rate(mention_rate, "mention_rate");
    check_rate(repost_rate, "repost_rate");
    check_rate(username_perturbation_rate, "username_perturbation_rate");
    check_rate(neighbor_overlap, "neighbor_overlap");
    check_rate(collision_rate, "collision_rate");
    check_rate(core_fraction, "core_fraction");
    check_rate(background_rate, "background_rate");
    check_rate(primary_topic_weight, "primary_topic_weight");
    check_rate(noise_rate, "noise_rate");
    if (n_entities == 0) throw ConfigError("synth: n_entities must be positive");
    if (n_topics_true == 0) throw ConfigError("synth: n_topics_true must be positive");
    if (vocab_size < n_topics_true) throw ConfigError("synth: vocab_size must be at least n_topics_true");
    const auto core_words = static_cast<std::size_t>(std::floor(core_fraction * static_cast<double>(vocab_size)));
    if (core_words / n_topics_true == 0) throw ConfigError("synth: vocabulary too small for one core word per topic");
    if (background_rate > 0.0 && core_words >= vocab_size) {
        throw ConfigError("synth: background_rate > 0 needs core_fraction < 1");
    }
    if (posts_per_user_min == 0 || posts_per_user_min > posts_per_user_max) {
        throw ConfigError("synth: need 1 <= posts_per_user_min <= posts_per_user_max");
    }
    if (words_per_post_min == 0 || words_per_post_min > words_per_post_max) {
        throw ConfigError("synth: need 1 <= words_per_post_min <= words_per_post_max");
    }
    if (name_pool == 0) throw ConfigError("synth: name_pool must be positive");
    if (friends_min > friends_max) throw ConfigError("synth: friends_min exceeds friends_max");
}

SynthOutput generate(const SynthConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    const auto& stop = corpus::default_stopwords();

    // Vocabulary of unique pronounceable words.
    std::vector<std::string> vocab;
    {
        std::unordered_set<std::string> seen;
        while (vocab.size() < cfg.vocab_size) {
            std::string w = syllables(rng, 2 + uniform_index(rng, 3));
            if (bernoulli(rng, 0.3)) w += kConsonants[uniform_index(rng, kConsonants.size())];
            if (stop.contains(w) || !seen.insert(w).second) continue;
            vocab.push_back(std::move(w));
        }
    }

    TopicModel tm;
    {
        std::vector<std::uint32_t> order(vocab.size());
        for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);
        const auto core_words = static_cast<std::size_t>(std::floor(cfg.core_fraction * static_cast<double>(vocab.size())));
        const std::size_t per_topic = core_words / cfg.n_topics_true;
        std::size_t pos = 0;
        auto weights = [&](std::size_t n) {
            std::vector<double> w(n);
            for (double& x : w) {
                const double e = -std::log1p(-uniform01(rng));
                x = e * e;
            }
            return w;
        };
        for (std::size_t t = 0; t < cfg.n_topics_true; ++t) {
            tm.cores.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(pos),
                                  order.begin() + static_cast<std::ptrdiff_t>(pos + per_topic));
            pos += per_topic;
            tm.core_dist.emplace_back(weights(per_topic));
        }
        tm.background.assign(order.begin() + static_cast<std::ptrdiff_t>(pos), order.end());
        if (!tm.background.empty()) tm.background_dist = Categorical(weights(tm.background.size()));
    }

    SynthOutput out;
    auto& truth = out.truth;
    for (const auto& core : tm.cores) {
        auto& words = truth.topic_cores.emplace_back();
        for (auto w : core) words.push_back(vocab[w]);
    }

    // Entity topic mixtures.
    const std::size_t n = cfg.n_entities;
    std::vector<std::size_t> primary(n);
    std::vector<std::vector<std::size_t>> by_topic(cfg.n_topics_true);
    truth.mixtures.assign(n, std::vector<double>(cfg.n_topics_true, 0.0));
    for (std::size_t e = 0; e < n; ++e) {
        primary[e] = uniform_index(rng, cfg.n_topics_true);
        by_topic[primary[e]].push_back(e);
        if (cfg.n_topics_true == 1) {
            truth.mixtures[e][0] = 1.0;
            continue;
        }
        std::size_t secondary = uniform_index(rng, cfg.n_topics_true - 1);
        if (secondary >= primary[e]) ++secondary;
        truth.mixtures[e][primary[e]] = cfg.primary_topic_weight;
        truth.mixtures[e][secondary] += 1.0 - cfg.primary_topic_weight;
    }
    std::vector<Categorical> mixture_dist;
    for (const auto& m : truth.mixtures) mixture_dist.emplace_back(m);

    // Platform membership.
    std::vector<std::size_t> ent_order(n);
    for (std::size_t i = 0; i < n; ++i) ent_order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(ent_order[i - 1], ent_order[uniform_index(rng, i)]);
    const auto n_cross = static_cast<std::size_t>(std::llround(cfg.cross_platform_fraction * static_cast<double>(n)));
    std::vector<bool> on_a(n, false), on_b(n, false);
    std::vector<std::size_t> cross, only_a, only_b;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t e = ent_order[i];
        if (i < n_cross) {
            on_a[e] = on_b[e] = true;
            cross.push_back(e);
        } else if ((i - n_cross) % 2 == 0) {
            on_a[e] = true;
            only_a.push_back(e);
        } else {
            on_b[e] = true;
            only_b.push_back(e);
        }
    }

    // Usernames from shared given/family pools so that near-collisions occur.
    std::vector<std::string> given, family;
    for (std::size_t i = 0; i < cfg.name_pool; ++i) given.push_back(syllables(rng, 2));
    for (std::size_t i = 0; i < cfg.name_pool; ++i) family.push_back(syllables(rng, 2 + uniform_index(rng, 2)));
    std::unordered_set<std::string> taken;
    auto fresh_name = [&]() {
        for (;;) {
            std::string s = given[uniform_index(rng, given.size())];
            const std::string_view seps[] = {"", "_", "."};
            s += seps[uniform_index(rng, 3)];
            s += family[uniform_index(rng, family.size())];
            if (bernoulli(rng, 0.3)) s += std::to_string(10 + uniform_index(rng, 90));
            if (taken.insert(s).second) return s;
        }
    };
    std::vector<std::string> name_a(n), name_b(n);
    for (std::size_t e = 0; e < n; ++e) {
        if (on_a[e]) name_a[e] = fresh_name();
        if (on_b[e]) name_b[e] = on_a[e] ? name_a[e] : fresh_name();
    }
    {
        const auto n_perturb = static_cast<std::size_t>(
            std::llround(cfg.username_perturbation_rate * static_cast<double>(cross.size())));
        std::vector<std::size_t> pick = cross;
        for (std::size_t i = pick.size(); i > 1; --i) std::swap(pick[i - 1], pick[uniform_index(rng, i)]);
        for (std::size_t i = 0; i < n_perturb; ++i) {
            const std::size_t e = pick[i];
            for (;;) {
                std::string s = perturb(rng, name_a[e]);
                if (s != name_a[e] && taken.insert(s).second) {
                    name_b[e] = std::move(s);
                    break;
                }
            }
        }
        const auto n_collide = std::min(
            only_a.size(),
            static_cast<std::size_t>(std::llround(cfg.collision_rate * static_cast<double>(only_b.size()))));
        for (std::size_t i = 0; i < n_collide; ++i) name_b[only_b[i]] = name_a[only_a[i]];
    }

    // Social circles, mostly within the primary topic.
    auto pick_friend = [&](std::size_t e) {
        const auto& same = by_topic[primary[e]];
        if (same.size() > 1 && bernoulli(rng, 0.7)) return same[uniform_index(rng, same.size())];
        return uniform_index(rng, n);
    };
    std::vector<std::vector<std::size_t>> friends(n);
    for (std::size_t e = 0; e < n; ++e) {
        const std::size_t want = uniform_between(rng, cfg.friends_min, cfg.friends_max);
        std::set<std::size_t> chosen;
        for (std::size_t tries = 0; chosen.size() < want && tries < 20 * want + 20; ++tries) {
            const std::size_t f = pick_friend(e);
            if (f != e) chosen.insert(f);
        }
        friends[e].assign(chosen.begin(), chosen.end());
    }
    std::vector<std::vector<std::size_t>> friends_a(n), friends_b(n);
    for (std::size_t e = 0; e < n; ++e) {
        for (std::size_t f : friends[e]) {
            if (on_a[f]) friends_a[e].push_back(f);
        }
        std::set<std::size_t> fb;
        for (std::size_t f : friends[e]) {
            std::size_t g = f;
            if (!bernoulli(rng, cfg.neighbor_overlap)) {
                g = pick_friend(e);
                if (g == e) continue;
            }
            if (on_b[g]) fb.insert(g);
        }
        friends_b[e].assign(fb.begin(), fb.end());
    }

    // Posts.
    auto make_text = [&](std::size_t e, std::vector<std::string>& mentions,
                         const std::vector<std::size_t>& circle, const std::vector<std::string>& names) {
        const std::size_t topic = mixture_dist[e].sample(rng);
        const std::size_t len = uniform_between(rng, cfg.words_per_post_min, cfg.words_per_post_max);
        std::string text;
        for (std::size_t i = 0; i < len; ++i) {
            std::uint32_t w;
            if (!tm.background.empty() && bernoulli(rng, cfg.background_rate)) {
                w = tm.background[tm.background_dist.sample(rng)];
            } else {
                w = tm.cores[topic][tm.core_dist[topic].sample(rng)];
            }
            if (!text.empty()) text += ' ';
            if (bernoulli(rng, cfg.hashtag_rate)) text += '#';
            text += vocab[w];
        }
        if (!circle.empty() && bernoulli(rng, cfg.mention_rate)) {
            const std::size_t k = 1 + uniform_index(rng, std::min<std::size_t>(2, circle.size()));
            std::set<std::string> picked;
            for (std::size_t i = 0; i < k; ++i) picked.insert(names[circle[uniform_index(rng, circle.size())]]);
            for (const auto& m : picked) {
                text += " @" + m;
                mentions.push_back(m);
            }
        }
        if (bernoulli(rng, cfg.noise_rate)) text += " https://t.co/" + syllables(rng, 3);
        if (bernoulli(rng, cfg.noise_rate)) text += std::string(" ") + std::string(kEmoji[uniform_index(rng, kEmoji.size())]);
        if (bernoulli(rng, cfg.noise_rate)) text += std::string(" ") + std::string(kEmoticons[uniform_index(rng, kEmoticons.size())]);
        return text;
    };

    auto build_platform = [&](Platform p, const std::vector<bool>& on, const std::vector<std::string>& names,
                              const std::vector<std::vector<std::size_t>>& circles) {
        const char prefix = p == Platform::A ? 'a' : 'b';
        std::vector<corpus::RawPost> posts;
        std::vector<std::vector<std::size_t>> originals(n);
        std::vector<std::size_t> pending_reposts(n, 0);
        std::int64_t clock = kBaseTimestamp;
        std::size_t counter = 0;
        for (std::size_t e = 0; e < n; ++e) {
            if (!on[e]) continue;
            const std::size_t count = uniform_between(rng, cfg.posts_per_user_min, cfg.posts_per_user_max);
            for (std::size_t i = 0; i < count; ++i) {
                if (i > 0 && bernoulli(rng, cfg.repost_rate)) {
                    ++pending_reposts[e];
                    continue;
                }
                corpus::RawPost post;
                post.platform = p;
                post.post_id = fmt::format("{}{:07d}", prefix, ++counter);
                post.author = names[e];
                post.text = make_text(e, post.mentioned_users, circles[e], names);
                clock += 1 + static_cast<std::int64_t>(uniform_index(rng, 600));
                post.timestamp = clock;
                originals[e].push_back(posts.size());
                posts.push_back(std::move(post));
            }
        }
        for (std::size_t e = 0; e < n; ++e) {
            std::vector<std::size_t> sources;
            for (std::size_t f : circles[e]) {
                if (!originals[f].empty()) sources.push_back(f);
            }
            for (std::size_t r = 0; r < pending_reposts[e]; ++r) {
                corpus::RawPost post;
                post.platform = p;
                post.post_id = fmt::format("{}{:07d}", prefix, ++counter);
                post.author = names[e];
                if (sources.empty() || originals[e].empty()) {
                    post.text = make_text(e, post.mentioned_users, circles[e], names);
                    clock += 1;
                    post.timestamp = clock;
                } else {
                    const std::size_t f = sources[uniform_index(rng, sources.size())];
                    const auto& src = posts[originals[f][uniform_index(rng, originals[f].size())]];
                    post.text = "RT @" + src.author + " " + src.text;
                    post.mentioned_users = src.mentioned_users;
                    post.repost_of = src.post_id;
                    post.timestamp = src.timestamp + 1 + static_cast<std::int64_t>(uniform_index(rng, 3600));
                }
                posts.push_back(std::move(post));
            }
        }
        std::stable_sort(posts.begin(), posts.end(), [](const auto& x, const auto& y) {
            return x.timestamp != y.timestamp ? x.timestamp < y.timestamp : x.post_id < y.post_id;
        });
        return posts;
    };

    out.corpus_a = build_platform(Platform::A, on_a, name_a, friends_a);
    out.corpus_b = build_platform(Platform::B, on_b, name_b, friends_b);

    for (std::size_t e : cross) truth.pairs.push_back({name_a[e], name_b[e], name_a[e] != name_b[e]});
    std::sort(truth.pairs.begin(), truth.pairs.end(),
              [](const auto& x, const auto& y) { return x.user_a < y.user_a; });
    std::set<std::string> ua, ub;
    for (std::size_t e = 0; e < n; ++e) {
        if (on_a[e]) ua.insert(name_a[e]);
        if (on_b[e]) ub.insert(name_b[e]);
    }
    truth.users_a.assign(ua.begin(), ua.end());
    truth.users_b.assign(ub.begin(), ub.end());
    return out;
}

void write_ground_truth(const std::string& path, const GroundTruth& truth) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (const auto& p : truth.pairs) out << p.user_a << '\t' << p.user_b << '\t' << (p.nontrivial ? 1 : 0) << '\n';
}

std::vector<TruePair> read_ground_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open ground truth '" + path + "'");
    std::vector<TruePair> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        TruePair p;
        std::string flag;
        if (!std::getline(ss, p.user_a, '\t') || !std::getline(ss, p.user_b, '\t') || !std::getline(ss, flag) ||
            (flag != "0" && flag != "1")) {
            throw DataError(fmt::format("{}:{}: expected user_A, user_B, 0|1", path, line_no));
        }
        p.nontrivial = flag == "1";
        pairs.push_back(std::move(p));
    }
    return pairs;
}

void write_output(const std::string& dir, const SynthOutput& out) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path d(dir);
    corpus::write_raw_corpus((d / "corpus_a.jsonl").string(), out.corpus_a);
    corpus::write_raw_corpus((d / "corpus_b.jsonl").string(), out.corpus_b);
    write_ground_truth((d / "ground_truth.tsv").string(), out.truth);
}

}  // namespace hashlink::synthgen
