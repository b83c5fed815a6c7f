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
#include "hashlink/graph.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "hashlink/common.hpp"

namespace hashlink::graph {

std::uint32_t WeightedGraph::add_vertex(const std::string& label) {
    auto [it, inserted] = index_.emplace(label, static_cast<std::uint32_t>(labels_.size()));
    if (inserted) {
        labels_.push_back(label);
        adj_.emplace_back();
    }
    return it->second;
}

void WeightedGraph::add_edge(std::uint32_t u, std::uint32_t v, double weight) {
    if (!(weight > 0.0)) throw std::invalid_argument("edge weight must be positive");
    if (u == v && !allow_self_loops_) throw std::invalid_argument("self-loop on '" + labels_[u] + "'");
    auto [it, inserted] = adj_[u].emplace(v, 0.0);
    if (inserted) ++n_edges_;
    it->second += weight;
    if (u != v) adj_[v][u] += weight;
}

std::optional<std::uint32_t> WeightedGraph::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double WeightedGraph::weight(std::uint32_t u, std::uint32_t v) const {
    auto it = adj_[u].find(v);
    return it == adj_[u].end() ? 0.0 : it->second;
}

double WeightedGraph::strength(std::uint32_t v) const {
    double s = 0.0;
    for (const auto& [u, w] : adj_[v]) s += w;
    return s;
}

std::vector<Edge> WeightedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(n_edges_);
    for (std::uint32_t u = 0; u < adj_.size(); ++u) {
        for (const auto& [v, w] : adj_[u]) {
            if (u <= v) out.push_back({u, v, w});
        }
    }
    return out;
}

WeightedGraph WeightedGraph::induced(const std::vector<std::uint32_t>& vertices) const {
    WeightedGraph sub(allow_self_loops_);
    std::unordered_map<std::uint32_t, std::uint32_t> local;
    for (auto v : vertices) local.emplace(v, sub.add_vertex(labels_[v]));
    for (auto v : vertices) {
        for (const auto& [u, w] : adj_[v]) {
            auto it = local.find(u);
            if (it != local.end() && v <= u) sub.add_edge(local.at(v), it->second, w);
        }
    }
    return sub;
}

Partition Partition::from_labels(const std::vector<std::int32_t>& labels) {
    Partition p;
    p.membership.assign(labels.size(), kUnassigned);
    std::unordered_map<std::int32_t, std::int32_t> dense;
    for (std::size_t v = 0; v < labels.size(); ++v) {
        if (labels[v] < 0) continue;
        auto [it, inserted] = dense.emplace(labels[v], static_cast<std::int32_t>(dense.size()));
        p.membership[v] = it->second;
    }
    p.n_communities = dense.size();
    return p;
}

std::vector<std::vector<std::uint32_t>> Partition::members() const {
    std::vector<std::vector<std::uint32_t>> out(n_communities);
    for (std::size_t v = 0; v < membership.size(); ++v) {
        if (membership[v] >= 0) out[static_cast<std::size_t>(membership[v])].push_back(static_cast<std::uint32_t>(v));
    }
    return out;
}

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

void write_edge_list(const std::string& path, const WeightedGraph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    // Isolated vertices have no edge line; list them so import restores the vertex set.
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
        if (g.degree(v) == 0) out << "#vertex\t" << g.label(v) << '\n';
    }
    for (const auto& e : g.edges()) {
        out << g.label(e.u) << '\t' << g.label(e.v) << '\t' << format_double(e.weight) << '\n';
    }
}

WeightedGraph read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open edge list '" + path + "'");
    WeightedGraph g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ss(line);
        std::string f;
        while (std::getline(ss, f, '\t')) fields.push_back(f);
        if (fields.size() == 2 && fields[0] == "#vertex") {
            g.add_vertex(fields[1]);
            continue;
        }
        if (fields.size() != 3) throw DataError(fmt::format("{}:{}: expected 3 fields", path, line_no));
        const double w = std::strtod(fields[2].c_str(), nullptr);
        if (!(w > 0.0)) throw DataError(fmt::format("{}:{}: non-positive weight", path, line_no));
        const auto u = g.add_vertex(fields[0]);
        const auto v = g.add_vertex(fields[1]);
        g.add_edge(u, v, w);
    }
    return g;
}

void write_partition(const std::string& path, const std::vector<std::string>& labels, const Partition& p) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (std::size_t v = 0; v < labels.size(); ++v) {
        out << labels[v] << '\t';
        if (p.membership[v] == kUnassigned) {
            out << '-';
        } else {
            out << p.membership[v];
        }
        out << '\n';
    }
}

Partition read_partition(const std::string& path, const std::vector<std::string>& labels) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open partition '" + path + "'");
    std::unordered_map<std::string, std::int32_t> assigned;
    std::string line;
    while (std::getline(in, line)) {
        const auto tab = line.rfind('\t');
        if (tab == std::string::npos) continue;
        const std::string value = line.substr(tab + 1);
        assigned[line.substr(0, tab)] = value == "-" ? kUnassigned : std::stoi(value);
    }
    std::vector<std::int32_t> raw(labels.size(), kUnassigned);
    for (std::size_t v = 0; v < labels.size(); ++v) {
        auto it = assigned.find(labels[v]);
        if (it != assigned.end()) raw[v] = it->second;
    }
    return Partition::from_labels(raw);
}

}  // namespace hashlink::graph
