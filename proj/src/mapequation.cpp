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
#include "hashlink/mapequation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "hashlink/common.hpp"

namespace hashlink::graph {

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

constexpr double kMinImprovement = 1e-12;

FlowNetwork merge_links(std::vector<double> node_flow, const std::map<std::pair<std::uint32_t, std::uint32_t>, double>& flows) {
    FlowNetwork net;
    net.node_flow = std::move(node_flow);
    net.links.reserve(flows.size());
    for (const auto& [uv, f] : flows) {
        if (uv.first != uv.second && f > 0.0) net.links.push_back({uv.first, uv.second, f});
    }
    return net;
}

// One level of the hierarchy being optimized: nodes are original vertices
// or modules of the level below.
struct Level {
    std::size_t n = 0;
    std::vector<double> flow;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> out;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> in;
    std::vector<double> out_total;
    std::vector<double> in_total;

    static Level from_links(std::vector<double> flow, const std::vector<FlowLink>& links) {
        Level lv;
        lv.n = flow.size();
        lv.flow = std::move(flow);
        std::map<std::pair<std::uint32_t, std::uint32_t>, double> agg;
        for (const auto& l : links) {
            if (l.source != l.target) agg[{l.source, l.target}] += l.flow;
        }
        lv.out.resize(lv.n);
        lv.in.resize(lv.n);
        lv.out_total.assign(lv.n, 0.0);
        lv.in_total.assign(lv.n, 0.0);
        for (const auto& [uv, f] : agg) {
            lv.out[uv.first].emplace_back(uv.second, f);
            lv.in[uv.second].emplace_back(uv.first, f);
            lv.out_total[uv.first] += f;
            lv.in_total[uv.second] += f;
        }
        return lv;
    }

    // Collapses modules (dense ids) into nodes of a coarser level.
    Level aggregate(const std::vector<std::int32_t>& module, std::size_t n_modules) const {
        std::vector<double> coarse_flow(n_modules, 0.0);
        std::vector<FlowLink> links;
        for (std::size_t u = 0; u < n; ++u) {
            const auto mu = static_cast<std::uint32_t>(module[u]);
            coarse_flow[mu] += flow[u];
            for (const auto& [v, f] : out[u]) {
                const auto mv = static_cast<std::uint32_t>(module[v]);
                if (mu != mv) links.push_back({mu, mv, f});
            }
        }
        return from_links(std::move(coarse_flow), links);
    }
};

std::vector<std::int32_t> dense_relabel(const std::vector<std::int32_t>& labels, std::size_t& n_out) {
    std::unordered_map<std::int32_t, std::int32_t> dense;
    std::vector<std::int32_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = dense.emplace(labels[i], static_cast<std::int32_t>(dense.size()));
        out[i] = it->second;
    }
    n_out = dense.size();
    return out;
}

// Greedy node-moving on one level. Keeps per-module flow, exit and enter
// flow and the four running sums the code length is assembled from.
class NodeMover {
public:
    NodeMover(const Level& lv, double node_term, const std::vector<std::int32_t>& initial)
        : lv_(lv), node_term_(node_term), module_(initial) {
        const std::size_t n = lv.n;
        flow_.assign(n, 0.0);
        exit_.assign(n, 0.0);
        enter_.assign(n, 0.0);
        size_.assign(n, 0);
        for (std::size_t u = 0; u < n; ++u) {
            const auto m = static_cast<std::size_t>(module_[u]);
            flow_[m] += lv.flow[u];
            ++size_[m];
            for (const auto& [v, f] : lv.out[u]) {
                if (module_[v] != module_[u]) {
                    exit_[m] += f;
                    enter_[static_cast<std::size_t>(module_[v])] += f;
                }
            }
        }
        for (std::size_t m = 0; m < n; ++m) {
            if (size_[m] == 0) {
                empty_.push_back(static_cast<std::int32_t>(m));
            } else {
                sum_enter_ += enter_[m];
                sum_module_terms_ += module_term(flow_[m], exit_[m], enter_[m]);
            }
        }
        w_out_.assign(n, 0.0);
        w_in_.assign(n, 0.0);
    }

    double code_length() const { return plogp(sum_enter_) + sum_module_terms_ - node_term_; }

    // Returns the number of moves made.
    std::size_t sweep(Rng& rng) {
        const std::size_t n = lv_.n;
        std::vector<std::uint32_t> order(n);
        std::iota(order.begin(), order.end(), 0U);
        for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);

        std::size_t moves = 0;
        std::vector<std::int32_t> touched;
        for (auto u : order) {
            const std::int32_t a = module_[u];
            touched.clear();
            auto touch = [&](std::int32_t m) {
                if (w_out_[static_cast<std::size_t>(m)] == 0.0 && w_in_[static_cast<std::size_t>(m)] == 0.0 &&
                    std::find(touched.begin(), touched.end(), m) == touched.end()) {
                    touched.push_back(m);
                }
            };
            for (const auto& [v, f] : lv_.out[u]) {
                touch(module_[v]);
                w_out_[static_cast<std::size_t>(module_[v])] += f;
            }
            for (const auto& [v, f] : lv_.in[u]) {
                touch(module_[v]);
                w_in_[static_cast<std::size_t>(module_[v])] += f;
            }

            std::int32_t best = a;
            double best_delta = 0.0;
            auto consider = [&](std::int32_t b) {
                if (b == a) return;
                const double delta = move_delta(u, a, b);
                if (delta < best_delta) {
                    best_delta = delta;
                    best = b;
                }
            };
            for (auto b : touched) consider(b);
            if (size_[static_cast<std::size_t>(a)] > 1 && !empty_.empty()) consider(empty_.back());

            if (best != a && best_delta < -kMinImprovement) {
                apply_move(u, a, best);
                ++moves;
            }
            for (auto m : touched) {
                w_out_[static_cast<std::size_t>(m)] = 0.0;
                w_in_[static_cast<std::size_t>(m)] = 0.0;
            }
        }
        return moves;
    }

    const std::vector<std::int32_t>& membership() const { return module_; }

private:
    static double module_term(double flow, double exit, double enter) {
        return -plogp(enter) - plogp(exit) + plogp(exit + flow);
    }

    struct Updated {
        double flow_a, exit_a, enter_a, flow_b, exit_b, enter_b;
    };

    Updated updated(std::uint32_t u, std::int32_t a, std::int32_t b) const {
        const auto ai = static_cast<std::size_t>(a);
        const auto bi = static_cast<std::size_t>(b);
        const double out_u = lv_.out_total[u];
        const double in_u = lv_.in_total[u];
        Updated r{};
        r.flow_a = flow_[ai] - lv_.flow[u];
        r.exit_a = exit_[ai] - (out_u - w_out_[ai]) + w_in_[ai];
        r.enter_a = enter_[ai] - (in_u - w_in_[ai]) + w_out_[ai];
        r.flow_b = flow_[bi] + lv_.flow[u];
        r.exit_b = exit_[bi] + (out_u - w_out_[bi]) - w_in_[bi];
        r.enter_b = enter_[bi] + (in_u - w_in_[bi]) - w_out_[bi];
        if (size_[ai] == 1) r.flow_a = r.exit_a = r.enter_a = 0.0;
        r.exit_a = std::max(r.exit_a, 0.0);
        r.enter_a = std::max(r.enter_a, 0.0);
        r.exit_b = std::max(r.exit_b, 0.0);
        r.enter_b = std::max(r.enter_b, 0.0);
        return r;
    }

    double move_delta(std::uint32_t u, std::int32_t a, std::int32_t b) const {
        const auto ai = static_cast<std::size_t>(a);
        const auto bi = static_cast<std::size_t>(b);
        const Updated r = updated(u, a, b);
        const double new_sum_enter = sum_enter_ - enter_[ai] - enter_[bi] + r.enter_a + r.enter_b;
        const double old_terms = module_term(flow_[ai], exit_[ai], enter_[ai]) +
                                 (size_[bi] ? module_term(flow_[bi], exit_[bi], enter_[bi]) : 0.0);
        const double new_terms = module_term(r.flow_a, r.exit_a, r.enter_a) + module_term(r.flow_b, r.exit_b, r.enter_b);
        return plogp(new_sum_enter) - plogp(sum_enter_) + new_terms - old_terms;
    }

    void apply_move(std::uint32_t u, std::int32_t a, std::int32_t b) {
        const auto ai = static_cast<std::size_t>(a);
        const auto bi = static_cast<std::size_t>(b);
        const Updated r = updated(u, a, b);
        sum_enter_ += r.enter_a + r.enter_b - enter_[ai] - enter_[bi];
        sum_module_terms_ += module_term(r.flow_a, r.exit_a, r.enter_a) + module_term(r.flow_b, r.exit_b, r.enter_b) -
                             module_term(flow_[ai], exit_[ai], enter_[ai]) -
                             (size_[bi] ? module_term(flow_[bi], exit_[bi], enter_[bi]) : 0.0);
        if (size_[bi] == 0) empty_.erase(std::find(empty_.begin(), empty_.end(), b));
        flow_[ai] = r.flow_a;
        exit_[ai] = r.exit_a;
        enter_[ai] = r.enter_a;
        flow_[bi] = r.flow_b;
        exit_[bi] = r.exit_b;
        enter_[bi] = r.enter_b;
        --size_[ai];
        ++size_[bi];
        if (size_[ai] == 0) empty_.push_back(a);
        module_[u] = b;
    }

    const Level& lv_;
    double node_term_;
    std::vector<std::int32_t> module_;
    std::vector<double> flow_, exit_, enter_;
    std::vector<std::size_t> size_;
    std::vector<std::int32_t> empty_;
    double sum_enter_ = 0.0;
    double sum_module_terms_ = 0.0;
    std::vector<double> w_out_, w_in_;
};

// Sweeps until a sweep makes no move or the sweep cap is hit.
bool run_moves(NodeMover& mover, Rng& rng, std::size_t max_sweeps) {
    bool any = false;
    for (std::size_t s = 0; s < max_sweeps; ++s) {
        if (mover.sweep(rng) == 0) break;
        any = true;
    }
    return any;
}

std::vector<std::int32_t> single_trial(const FlowNetwork& net, const Level& base, double node_term,
                                       const MapEquationOptions& opt, Rng& rng) {
    const std::size_t n = base.n;
    std::vector<std::int32_t> best(n);
    std::iota(best.begin(), best.end(), 0);
    double best_len = code_length(net, best);

    for (std::size_t pass = 0; pass < std::max<std::size_t>(opt.max_passes, 1); ++pass) {
        // Fine level: individual vertices, starting from the current modules.
        NodeMover fine(base, node_term, best);
        run_moves(fine, rng, opt.max_sweeps);
        std::size_t n_modules = 0;
        std::vector<std::int32_t> assignment = dense_relabel(fine.membership(), n_modules);

        // Coarse levels: modules become nodes until nothing merges.
        Level level = base.aggregate(assignment, n_modules);
        while (level.n > 1) {
            std::vector<std::int32_t> singletons(level.n);
            std::iota(singletons.begin(), singletons.end(), 0);
            NodeMover coarse(level, node_term, singletons);
            if (!run_moves(coarse, rng, opt.max_sweeps)) break;
            std::size_t n_coarse = 0;
            const std::vector<std::int32_t> merged = dense_relabel(coarse.membership(), n_coarse);
            for (auto& m : assignment) m = merged[static_cast<std::size_t>(m)];
            level = level.aggregate(merged, n_coarse);
        }

        const double len = code_length(net, assignment);
        if (len < best_len - kMinImprovement) {
            best_len = len;
            best = std::move(assignment);
        } else {
            break;
        }
    }
    return best;
}

}  // namespace

FlowNetwork flow_from_undirected(const WeightedGraph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<double> node_flow(n, 0.0);
    double total = 0.0;
    for (std::uint32_t v = 0; v < n; ++v) {
        node_flow[v] = g.strength(v);
        total += node_flow[v];
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> flows;
    if (total > 0.0) {
        for (auto& f : node_flow) f /= total;
        for (std::uint32_t u = 0; u < n; ++u) {
            for (const auto& [v, w] : g.neighbors(u)) flows[{u, v}] += w / total;
        }
    }
    return merge_links(std::move(node_flow), flows);
}

FlowNetwork flow_from_transitions(const kernels::TransitionRows& rows, double damping) {
    const std::size_t n = rows.n;
    const kernels::IncomingRows in = kernels::IncomingRows::build(rows);
    std::vector<double> p(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    for (int it = 0; it < 10000; ++it) {
        kernels::pagerank_step(in, p, damping, next);
        double diff = 0.0;
        for (std::size_t v = 0; v < n; ++v) diff += std::abs(next[v] - p[v]);
        std::swap(p, next);
        if (diff < 1e-15) break;
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> flows;
    double total = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t k = rows.offsets[u]; k < rows.offsets[u + 1]; ++k) {
            const double f = p[u] * rows.probs[k];
            flows[{static_cast<std::uint32_t>(u), rows.targets[k]}] += f;
            total += f;
        }
    }
    if (total > 0.0) {
        for (auto& [uv, f] : flows) f /= total;
    }
    return merge_links(std::move(p), flows);
}

double code_length(const FlowNetwork& net, std::span<const std::int32_t> membership) {
    std::unordered_map<std::int32_t, std::size_t> slot;
    for (auto m : membership) slot.emplace(m, slot.size());
    std::vector<double> flow(slot.size(), 0.0);
    std::vector<double> exit(slot.size(), 0.0);
    std::vector<double> enter(slot.size(), 0.0);
    double node_term = 0.0;
    for (std::size_t v = 0; v < net.size(); ++v) {
        flow[slot.at(membership[v])] += net.node_flow[v];
        node_term += plogp(net.node_flow[v]);
    }
    for (const auto& l : net.links) {
        const auto a = slot.at(membership[l.source]);
        const auto b = slot.at(membership[l.target]);
        if (a != b) {
            exit[a] += l.flow;
            enter[b] += l.flow;
        }
    }
    double sum_enter = 0.0;
    double terms = 0.0;
    for (std::size_t m = 0; m < flow.size(); ++m) {
        sum_enter += enter[m];
        terms += -plogp(enter[m]) - plogp(exit[m]) + plogp(exit[m] + flow[m]);
    }
    return plogp(sum_enter) + terms - node_term;
}

MapEquationResult optimize_map_equation(const FlowNetwork& net, const MapEquationOptions& options) {
    MapEquationResult result;
    const std::size_t n = net.size();
    if (n == 0) return result;

    const Level base = Level::from_links(net.node_flow, net.links);
    double node_term = 0.0;
    for (double f : net.node_flow) node_term += plogp(f);

    const std::vector<std::int32_t> one_module(n, 0);
    result.one_module_code_length = code_length(net, one_module);

    std::vector<std::int32_t> best;
    double best_len = 0.0;
    for (std::size_t t = 0; t < std::max<std::size_t>(options.trials, 1); ++t) {
        Rng rng(derive_seed(options.seed, "mapeq-trial-" + std::to_string(t)));
        auto candidate = single_trial(net, base, node_term, options, rng);
        const double len = code_length(net, candidate);
        if (best.empty() || len < best_len - kMinImprovement) {
            best_len = len;
            best = std::move(candidate);
        }
    }
    if (result.one_module_code_length < best_len - kMinImprovement) {
        best = one_module;
        best_len = result.one_module_code_length;
    }
    std::size_t n_modules = 0;
    result.membership = dense_relabel(best, n_modules);
    result.code_length = best_len;
    return result;
}

}  // namespace hashlink::graph
