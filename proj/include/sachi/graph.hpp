// Copyright 2026 The sachi-sim developers
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#ifndef SACHI_GRAPH_HPP
#define SACHI_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace sachi {

// A spin is exactly +1 or -1; no other states exist.
using Spin = int8_t;

// A combinatorial optimization problem in Ising form: spins coupled by
// signed R-bit interaction coefficients plus per-spin external fields.
// Edges are undirected, stored once with i < j, no self loops, no
// duplicates. Fields share the coefficient resolution.
class IsingGraph {
public:
    struct Edge {
        int32_t i = 0;
        int32_t j = 0;
        int64_t weight = 0;
    };

    struct Neighbor {
        int32_t id = 0;
        int64_t weight = 0;
    };

    IsingGraph(int64_t num_spins, int resolution);

    int32_t num_spins() const { return num_spins_; }
    int resolution() const { return resolution_; }
    int64_t num_edges() const { return static_cast<int64_t>(edges_.size()); }

    // Throws InvalidArgument on range violations, self loops or duplicates.
    void add_edge(int64_t i, int64_t j, int64_t weight);
    void set_field(int64_t i, int64_t value);

    int64_t field(int64_t i) const;
    int64_t degree(int64_t i) const;
    int64_t total_degree() const { return 2 * num_edges(); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Neighbor> neighbors(int64_t i) const;
    bool has_nonzero_field() const;
    int64_t nonzero_field_count() const;

    std::span<const Spin> spins() const { return spins_; }
    Spin spin(int64_t i) const;
    void set_spin(int64_t i, int spin_value);
    void set_spins(std::span<const Spin> values);

private:
    void check_spin_index(int64_t i) const;

    int32_t num_spins_;
    int resolution_;
    std::vector<Spin> spins_;
    std::vector<int64_t> fields_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::unordered_set<uint64_t> edge_keys_;
};

// Ensemble energy  H = -sum_edges J_ij*s_i*s_j - sum_i h_i*s_i  over the
// graph's current spins, exact 64-bit integer arithmetic (widths are
// validated at graph construction so no accumulation can wrap).
int64_t hamiltonian(const IsingGraph& graph);
int64_t hamiltonian(const IsingGraph& graph, std::span<const Spin> spins);

// Per-spin field  H_sigma(i) = sum_j -J_ij*s_j - h_i. Throws on a bad index.
int64_t local_field(const IsingGraph& graph, int64_t i);
int64_t local_field(const IsingGraph& graph, std::span<const Spin> spins,
                    int64_t i);

// Text graph format, one record per line:
//   ising <num_spins> <R>
//   h <i> <value>
//   e <i> <j> <Jij>
// Stores are canonical (nonzero fields in index order, edges sorted), so
// load(store(g)) round-trips exactly. Spin state is not part of the file.
IsingGraph load_graph(const std::string& path);
void save_graph(const IsingGraph& graph, const std::string& path);

IsingGraph parse_graph(const std::string& text);
std::string format_graph(const IsingGraph& graph);

} // namespace sachi

#endif // SACHI_GRAPH_HPP
