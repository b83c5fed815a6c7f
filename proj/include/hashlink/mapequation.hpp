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

// Two-level map equation over a flow network, and a greedy optimizer:
// node moves plus module aggregation, repeated from the finest level until
// the code length stops improving, over several seeded trials.

#include <cstdint>
#include <span>
#include <vector>

#include "hashlink/graph.hpp"
#include "hashlink/kernels.hpp"

namespace hashlink::graph {

struct FlowLink {
    std::uint32_t source;
    std::uint32_t target;
    double flow;
};

/// Stationary visit rates per node and directed flow per link. Self-links
/// are dropped: they never cross a module boundary.
struct FlowNetwork {
    std::vector<double> node_flow;
    std::vector<FlowLink> links;

    std::size_t size() const { return node_flow.size(); }
};

/// Undirected random walk: node flow = strength / 2W, each direction of an
/// edge carries weight / 2W.
FlowNetwork flow_from_undirected(const WeightedGraph& g);

/// Directed walk on transition rows with uniform teleportation at rate
/// 1 - damping. Node flow is the damped stationary distribution; link flow
/// p(u) P(u,v) is renormalized to unit total. Teleport steps are not coded.
FlowNetwork flow_from_transitions(const kernels::TransitionRows& rows, double damping);

/// L(M) = q H(Q) + sum_i p_i H(P_i), in bits. `membership` ids must be >= 0.
double code_length(const FlowNetwork& net, std::span<const std::int32_t> membership);

struct MapEquationOptions {
    std::uint64_t seed = 0;
    std::size_t max_passes = 10;  // outer refinement rounds per trial
    std::size_t trials = 8;
    std::size_t max_sweeps = 50;  // node-move sweeps per level
};

struct MapEquationResult {
    std::vector<std::int32_t> membership;  // dense, first-appearance order
    double code_length = 0.0;
    double one_module_code_length = 0.0;
};

MapEquationResult optimize_map_equation(const FlowNetwork& net, const MapEquationOptions& options);

}  // namespace hashlink::graph
