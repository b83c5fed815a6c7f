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

// Bagged CART trees over the three trial similarity scores.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hashlink::resolve {

inline constexpr std::size_t kNumFeatures = 3;
using FeatureRow = std::array<double, kNumFeatures>;

struct ForestOptions {
    std::size_t n_trees = 100;
    std::size_t max_depth = 5;
    std::size_t features_per_split = 2;
    std::size_t min_samples_split = 2;
    std::uint64_t seed = 0;
};

struct TreeNode {
    std::int32_t feature = -1;  // -1: leaf
    double threshold = 0.0;     // go left when x[feature] <= threshold
    std::int32_t left = -1;
    std::int32_t right = -1;
    double probability = 0.0;   // fraction of matches among training rows reaching the node
};

struct FusionModel {
    ForestOptions options;
    std::vector<std::vector<TreeNode>> trees;
    double oob_accuracy = 0.0;
    std::size_t oob_rows = 0;
};

/// Gini splits, bootstrap resampling, `features_per_split` candidate
/// features drawn per node. Throws ConfigError when the labels hold one class.
FusionModel train_forest(std::span<const FeatureRow> rows, std::span<const int> labels, const ForestOptions& options);

/// Mean of the per-tree leaf probabilities.
double predict(const FusionModel& model, const FeatureRow& row);

void write_forest(const std::string& path, const FusionModel& model);
FusionModel read_forest(const std::string& path);

}  // namespace hashlink::resolve
