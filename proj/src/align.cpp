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
#include "hashlink/align.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace hashlink::align {

SeedSet find_seeds(const netgraph::ContentContextGraph& a, const netgraph::ContentContextGraph& b) {
    std::map<std::string, std::uint32_t> tags_a;
    for (std::uint32_t v = 0; v < a.num_vertices(); ++v) {
        if (a.vertex(v).kind == netgraph::VertexKind::Hashtag) tags_a.emplace(a.vertex(v).label, v);
    }
    SeedSet seeds;
    seeds.derivation = SeedDerivation::CommonHashtags;
    std::vector<std::pair<std::string, SeedPair>> found;
    for (std::uint32_t v = 0; v < b.num_vertices(); ++v) {
        const auto& vb = b.vertex(v);
        if (vb.kind != netgraph::VertexKind::Hashtag) continue;
        auto it = tags_a.find(vb.label);
        if (it != tags_a.end()) found.push_back({vb.label, SeedPair{it->second, v, "H:AB:" + vb.label}});
    }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [w, pair] : found) seeds.pairs.push_back(std::move(pair));
    if (seeds.pairs.empty()) throw DataError("no common hashtags between the two graphs: nothing to align on");
    return seeds;
}

kernels::TransitionRows to_markov(const graph::WeightedGraph& g) {
    kernels::TransitionRows rows;
    rows.n = g.num_vertices();
    rows.offsets.reserve(rows.n + 1);
    for (std::uint32_t u = 0; u < rows.n; ++u) {
        double s = 0.0;
        for (const auto& [v, w] : g.neighbors(u)) s += w;
        for (const auto& [v, w] : g.neighbors(u)) {
            rows.targets.push_back(v);
            rows.probs.push_back(w / s);
        }
        rows.offsets.push_back(rows.targets.size());
    }
    return rows;
}

std::optional<std::uint32_t> JoinedGraph::find(const std::string& label) const {
    auto it = index.find(label);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

namespace {

void validate_seeds(const graph::WeightedGraph& a, const graph::WeightedGraph& b, const SeedSet& seeds) {
    std::set<std::uint32_t> used_a;
    std::set<std::uint32_t> used_b;
    for (const auto& s : seeds.pairs) {
        if (s.a >= a.num_vertices() || s.b >= b.num_vertices()) throw DataError("seed vertex out of range");
        if (!used_a.insert(s.a).second || !used_b.insert(s.b).second) {
            throw DataError("seed vertex '" + s.label + "' appears in two pairs");
        }
    }
}

using Row = std::map<std::uint32_t, double>;

Row mapped_row(const graph::WeightedGraph& g, std::uint32_t u, const std::vector<std::uint32_t>& to_joined,
               double scale) {
    Row row;
    const double s = g.strength(u);
    for (const auto& [v, w] : g.neighbors(u)) row[to_joined[v]] += scale * w / s;
    return row;
}

}  // namespace

JoinedGraph aggregate_merge(const graph::WeightedGraph& a, const graph::WeightedGraph& b, const SeedSet& seeds,
                            double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(fmt::format("mixing probability p={} outside [0, 1]", p));
    if (seeds.pairs.empty()) throw DataError("aggregate_merge needs at least one seed pair");
    validate_seeds(a, b, seeds);

    JoinedGraph j;
    j.labels = a.labels();
    j.from_a.resize(a.num_vertices());
    std::iota(j.from_a.begin(), j.from_a.end(), 0U);
    constexpr auto kNone = static_cast<std::uint32_t>(-1);
    j.from_b.assign(b.num_vertices(), kNone);
    std::vector<std::int64_t> seed_b_of(a.num_vertices(), -1);
    for (const auto& s : seeds.pairs) {
        j.from_b[s.b] = s.a;
        j.labels[s.a] = s.label;
        seed_b_of[s.a] = s.b;
    }
    for (std::uint32_t v = 0; v < b.num_vertices(); ++v) {
        if (j.from_b[v] == kNone) {
            j.from_b[v] = static_cast<std::uint32_t>(j.labels.size());
            j.labels.push_back(b.label(v));
        }
    }
    for (std::uint32_t v = 0; v < j.labels.size(); ++v) {
        if (!j.index.emplace(j.labels[v], v).second) throw DataError("duplicate joined label '" + j.labels[v] + "'");
    }

    std::vector<std::uint32_t> b_origin(j.labels.size(), kNone);
    for (std::uint32_t v = 0; v < b.num_vertices(); ++v) b_origin[j.from_b[v]] = v;

    auto& rows = j.rows;
    rows.n = j.labels.size();
    rows.offsets.reserve(rows.n + 1);
    for (std::uint32_t v = 0; v < rows.n; ++v) {
        Row row;
        if (v < a.num_vertices() && seed_b_of[v] >= 0) {
            const auto vb = static_cast<std::uint32_t>(seed_b_of[v]);
            const bool has_a = a.degree(v) > 0;
            const bool has_b = b.degree(vb) > 0;
            const double wa = has_b ? p : 1.0;
            const double wb = has_a ? 1.0 - p : 1.0;
            if (has_a) row = mapped_row(a, v, j.from_a, wa);
            if (has_b) {
                for (const auto& [t, x] : mapped_row(b, vb, j.from_b, wb)) row[t] += x;
            }
        } else if (v < a.num_vertices()) {
            row = mapped_row(a, v, j.from_a, 1.0);
        } else {
            row = mapped_row(b, b_origin[v], j.from_b, 1.0);
        }
        for (const auto& [t, x] : row) {
            if (x > 0.0) {
                rows.targets.push_back(t);
                rows.probs.push_back(x);
            }
        }
        rows.offsets.push_back(rows.targets.size());
    }
    return j;
}

graph::WeightedGraph link_merge(const graph::WeightedGraph& a, const graph::WeightedGraph& b, const SeedSet& seeds,
                                double link_weight) {
    if (!(link_weight > 0.0)) throw ConfigError("link_weight must be positive");
    validate_seeds(a, b, seeds);
    graph::WeightedGraph g;
    const auto offset = static_cast<std::uint32_t>(a.num_vertices());
    // Labels are prefixed so identical labels on both sides stay distinct.
    for (const auto& l : a.labels()) g.add_vertex("A|" + l);
    for (const auto& l : b.labels()) g.add_vertex("B|" + l);
    for (const auto& e : a.edges()) g.add_edge(e.u, e.v, e.weight);
    for (const auto& e : b.edges()) g.add_edge(e.u + offset, e.v + offset, e.weight);
    for (const auto& s : seeds.pairs) g.add_edge(s.a, s.b + offset, link_weight);
    return g;
}

std::vector<std::uint32_t> largest_connected_component(const JoinedGraph& joined) {
    const std::size_t n = joined.size();
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0U);
    auto root = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    const auto& rows = joined.rows;
    for (std::uint32_t u = 0; u < n; ++u) {
        for (std::size_t k = rows.offsets[u]; k < rows.offsets[u + 1]; ++k) {
            const auto ru = root(u);
            const auto rv = root(rows.targets[k]);
            if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
        }
    }
    std::map<std::uint32_t, std::vector<std::uint32_t>> components;
    for (std::uint32_t v = 0; v < n; ++v) components[root(v)].push_back(v);
    const std::vector<std::uint32_t>* best = nullptr;
    const std::string* best_label = nullptr;
    for (const auto& [r, members] : components) {
        const std::string* smallest = &joined.labels[members.front()];
        for (auto v : members) {
            if (joined.labels[v] < *smallest) smallest = &joined.labels[v];
        }
        if (!best || members.size() > best->size() || (members.size() == best->size() && *smallest < *best_label)) {
            best = &members;
            best_label = smallest;
        }
    }
    return best ? *best : std::vector<std::uint32_t>{};
}

CrossCommunities detect_cross_communities(const JoinedGraph& joined, const CrossCommunityOptions& options) {
    CrossCommunities out;
    out.component = largest_connected_component(joined);
    std::vector<std::int32_t> labels(joined.size(), graph::kUnassigned);
    if (out.component.empty()) {
        out.partition = graph::Partition::from_labels(labels);
        return out;
    }
    std::vector<std::int64_t> local(joined.size(), -1);
    for (std::size_t i = 0; i < out.component.size(); ++i) local[out.component[i]] = static_cast<std::int64_t>(i);

    kernels::TransitionRows sub;
    sub.n = out.component.size();
    for (auto v : out.component) {
        for (std::size_t k = joined.rows.offsets[v]; k < joined.rows.offsets[v + 1]; ++k) {
            sub.targets.push_back(static_cast<std::uint32_t>(local[joined.rows.targets[k]]));
            sub.probs.push_back(joined.rows.probs[k]);
        }
        sub.offsets.push_back(sub.targets.size());
    }
    graph::MapEquationOptions opt;
    opt.seed = options.seed;
    opt.max_passes = options.max_passes;
    opt.trials = options.trials;
    const auto result = graph::optimize_map_equation(graph::flow_from_transitions(sub, options.damping), opt);
    for (std::size_t i = 0; i < out.component.size(); ++i) labels[out.component[i]] = result.membership[i];
    out.partition = graph::Partition::from_labels(labels);
    out.code_length = result.code_length;
    return out;
}

void write_joined(const std::string& path, const JoinedGraph& joined) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (const auto& l : joined.labels) out << "#vertex\t" << l << '\n';
    const auto& rows = joined.rows;
    for (std::uint32_t u = 0; u < rows.n; ++u) {
        for (std::size_t k = rows.offsets[u]; k < rows.offsets[u + 1]; ++k) {
            out << joined.labels[u] << '\t' << joined.labels[rows.targets[k]] << '\t'
                << graph::format_double(rows.probs[k]) << '\n';
        }
    }
}

JoinedGraph read_joined(const std::string& path, const graph::WeightedGraph& a, const graph::WeightedGraph& b,
                        const SeedSet& seeds) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open joined graph '" + path + "'");
    JoinedGraph j;
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) f.push_back(field);
        if (f.size() == 2 && f[0] == "#vertex") {
            j.index.emplace(f[1], static_cast<std::uint32_t>(j.labels.size()));
            j.labels.push_back(f[1]);
            rows.emplace_back();
            continue;
        }
        if (f.size() != 3) throw DataError(fmt::format("{}:{}: expected 3 fields", path, line_no));
        const auto src = j.find(f[0]);
        const auto dst = j.find(f[1]);
        if (!src || !dst) throw DataError(fmt::format("{}:{}: undeclared vertex", path, line_no));
        rows[*src][*dst] = std::strtod(f[2].c_str(), nullptr);
    }
    j.rows.n = j.labels.size();
    for (const auto& row : rows) {
        for (const auto& [t, x] : row) {
            j.rows.targets.push_back(t);
            j.rows.probs.push_back(x);
        }
        j.rows.offsets.push_back(j.rows.targets.size());
    }
    std::vector<const std::string*> fused_a(a.num_vertices(), nullptr);
    std::vector<const std::string*> fused_b(b.num_vertices(), nullptr);
    validate_seeds(a, b, seeds);
    for (const auto& sp : seeds.pairs) {
        fused_a[sp.a] = &sp.label;
        fused_b[sp.b] = &sp.label;
    }
    auto locate = [&](const std::string& label) {
        if (auto id = j.find(label)) return *id;
        throw DataError("joined graph '" + path + "' has no vertex for '" + label + "'");
    };
    for (std::uint32_t v = 0; v < a.num_vertices(); ++v) j.from_a.push_back(locate(fused_a[v] ? *fused_a[v] : a.label(v)));
    for (std::uint32_t v = 0; v < b.num_vertices(); ++v) j.from_b.push_back(locate(fused_b[v] ? *fused_b[v] : b.label(v)));
    return j;
}

void write_seed_manifest(const std::string& path, const SeedSet& seeds, const graph::WeightedGraph& a,
                         const graph::WeightedGraph& b) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (const auto& s : seeds.pairs) out << s.label << '\t' << a.label(s.a) << '\t' << b.label(s.b) << '\n';
}

SeedSet read_seed_manifest(const std::string& path, const graph::WeightedGraph& a, const graph::WeightedGraph& b) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open seed manifest '" + path + "'");
    SeedSet seeds;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) f.push_back(field);
        if (f.size() != 3) throw DataError(fmt::format("{}:{}: expected 3 fields", path, line_no));
        const auto va = a.find(f[1]);
        const auto vb = b.find(f[2]);
        if (!va || !vb) throw DataError(fmt::format("{}:{}: seed vertex not in its platform graph", path, line_no));
        seeds.pairs.push_back({*va, *vb, f[0]});
    }
    validate_seeds(a, b, seeds);
    return seeds;
}

}  // namespace hashlink::align
