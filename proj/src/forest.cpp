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
#include "hashlink/forest.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include <fmt/format.h>

#include "hashlink/common.hpp"
#include "hashlink/graph.hpp"

namespace hashlink::resolve {

namespace {

double gini(double pos, double n) {
    if (n <= 0.0) return 0.0;
    const double p = pos / n;
    return 2.0 * p * (1.0 - p);
}

class TreeBuilder {
public:
    TreeBuilder(std::span<const FeatureRow> rows, std::span<const int> labels, const ForestOptions& opt, Rng& rng)
        : rows_(rows), labels_(labels), opt_(opt), rng_(rng) {}

    std::vector<TreeNode> build(std::vector<std::uint32_t> sample) {
        nodes_.clear();
        grow(sample, 0);
        return std::move(nodes_);
    }

private:
    std::int32_t grow(std::vector<std::uint32_t>& sample, std::size_t depth) {
        const auto id = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
        double pos = 0.0;
        for (auto i : sample) pos += labels_[i];
        const double n = static_cast<double>(sample.size());
        nodes_[static_cast<std::size_t>(id)].probability = n > 0.0 ? pos / n : 0.0;
        if (depth >= opt_.max_depth || sample.size() < opt_.min_samples_split || pos == 0.0 || pos == n) return id;

        // Candidate features: a seeded partial shuffle of {0, 1, 2}.
        std::array<std::size_t, kNumFeatures> feats{0, 1, 2};
        const std::size_t m = std::clamp<std::size_t>(opt_.features_per_split, 1, kNumFeatures);
        for (std::size_t i = 0; i < m; ++i) std::swap(feats[i], feats[i + uniform_index(rng_, kNumFeatures - i)]);

        const double parent = gini(pos, n);
        double best_gain = 0.0;
        std::int32_t best_feature = -1;
        double best_threshold = 0.0;
        std::vector<std::uint32_t> order(sample);
        for (std::size_t fi = 0; fi < m; ++fi) {
            const std::size_t f = feats[fi];
            std::sort(order.begin(), order.end(), [&](auto a, auto b) {
                if (rows_[a][f] != rows_[b][f]) return rows_[a][f] < rows_[b][f];
                return a < b;
            });
            double left_pos = 0.0;
            for (std::size_t i = 0; i + 1 < order.size(); ++i) {
                left_pos += labels_[order[i]];
                const double lo = rows_[order[i]][f];
                const double hi = rows_[order[i + 1]][f];
                if (lo == hi) continue;
                const double nl = static_cast<double>(i + 1);
                const double nr = n - nl;
                const double impurity = (nl * gini(left_pos, nl) + nr * gini(pos - left_pos, nr)) / n;
                const double gain = parent - impurity;
                if (gain > best_gain + 1e-15) {
                    best_gain = gain;
                    best_feature = static_cast<std::int32_t>(f);
                    best_threshold = lo + (hi - lo) / 2.0;
                    if (!(best_threshold < hi)) best_threshold = lo;
                }
            }
        }
        if (best_feature < 0) return id;

        std::vector<std::uint32_t> left;
        std::vector<std::uint32_t> right;
        for (auto i : sample) {
            (rows_[i][static_cast<std::size_t>(best_feature)] <= best_threshold ? left : right).push_back(i);
        }
        sample.clear();
        sample.shrink_to_fit();
        const auto l = grow(left, depth + 1);
        const auto r = grow(right, depth + 1);
        auto& node = nodes_[static_cast<std::size_t>(id)];
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.left = l;
        node.right = r;
        return id;
    }

    std::span<const FeatureRow> rows_;
    std::span<const int> labels_;
    const ForestOptions& opt_;
    Rng& rng_;
    std::vector<TreeNode> nodes_;
};

double tree_predict(const std::vector<TreeNode>& tree, const FeatureRow& row) {
    std::size_t i = 0;
    while (tree[i].feature >= 0) {
        i = static_cast<std::size_t>(row[static_cast<std::size_t>(tree[i].feature)] <= tree[i].threshold ? tree[i].left
                                                                                                          : tree[i].right);
    }
    return tree[i].probability;
}

}  // namespace

FusionModel train_forest(std::span<const FeatureRow> rows, std::span<const int> labels, const ForestOptions& options) {
    if (rows.size() != labels.size()) throw ConfigError("feature rows and labels differ in length");
    const auto positives = std::count(labels.begin(), labels.end(), 1);
    if (positives == 0 || positives == static_cast<std::ptrdiff_t>(labels.size())) {
        throw ConfigError("fuser training needs both match and non-match trials");
    }
    FusionModel model;
    model.options = options;
    Rng rng(options.seed);
    const std::size_t n = rows.size();
    std::vector<double> oob_sum(n, 0.0);
    std::vector<std::uint32_t> oob_votes(n, 0);
    TreeBuilder builder(rows, labels, options, rng);
    for (std::size_t t = 0; t < options.n_trees; ++t) {
        std::vector<std::uint32_t> sample(n);
        std::vector<bool> in_bag(n, false);
        for (auto& s : sample) {
            s = static_cast<std::uint32_t>(uniform_index(rng, n));
            in_bag[s] = true;
        }
        model.trees.push_back(builder.build(std::move(sample)));
        for (std::size_t i = 0; i < n; ++i) {
            if (!in_bag[i]) {
                oob_sum[i] += tree_predict(model.trees.back(), rows[i]);
                ++oob_votes[i];
            }
        }
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (oob_votes[i] == 0) continue;
        ++model.oob_rows;
        const int guess = oob_sum[i] / oob_votes[i] >= 0.5 ? 1 : 0;
        if (guess == labels[i]) ++correct;
    }
    model.oob_accuracy = model.oob_rows ? static_cast<double>(correct) / static_cast<double>(model.oob_rows) : 0.0;
    return model;
}

double predict(const FusionModel& model, const FeatureRow& row) {
    if (model.trees.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& tree : model.trees) sum += tree_predict(tree, row);
    return std::clamp(sum / static_cast<double>(model.trees.size()), 0.0, 1.0);
}

void write_forest(const std::string& path, const FusionModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    const auto& o = model.options;
    out << fmt::format("forest 1\ntrees {}\nmax_depth {}\nfeatures_per_split {}\nmin_samples_split {}\nseed {}\n",
                       o.n_trees, o.max_depth, o.features_per_split, o.min_samples_split, o.seed);
    out << "oob_accuracy " << graph::format_double(model.oob_accuracy) << "\noob_rows " << model.oob_rows << '\n';
    for (const auto& tree : model.trees) {
        out << "tree " << tree.size() << '\n';
        for (const auto& nd : tree) {
            out << nd.feature << ' ' << graph::format_double(nd.threshold) << ' ' << nd.left << ' ' << nd.right << ' '
                << graph::format_double(nd.probability) << '\n';
        }
    }
}

FusionModel read_forest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open fuser model '" + path + "'");
    FusionModel m;
    std::string key;
    int version = 0;
    auto& o = m.options;
    in >> key >> version;
    if (key != "forest" || version != 1) throw DataError(path + ": not a forest model");
    in >> key >> o.n_trees >> key >> o.max_depth >> key >> o.features_per_split >> key >> o.min_samples_split >> key >>
        o.seed >> key >> m.oob_accuracy >> key >> m.oob_rows;
    for (std::size_t t = 0; t < o.n_trees; ++t) {
        std::size_t size = 0;
        in >> key >> size;
        if (!in || key != "tree") throw DataError(path + ": truncated forest");
        std::vector<TreeNode> tree(size);
        for (auto& nd : tree) {
            std::string thr, prob;
            in >> nd.feature >> thr >> nd.left >> nd.right >> prob;
            nd.threshold = std::strtod(thr.c_str(), nullptr);
            nd.probability = std::strtod(prob.c_str(), nullptr);
        }
        if (!in) throw DataError(path + ": truncated tree");
        m.trees.push_back(std::move(tree));
    }
    return m;
}

}  // namespace hashlink::resolve
