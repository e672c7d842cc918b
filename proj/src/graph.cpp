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

#include "sachi/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sachi/bitcompute.hpp"
#include "sachi/errors.hpp"

namespace sachi {

namespace {

int64_t ic_min(int r) { return -(int64_t{1} << (r - 1)); }
int64_t ic_max(int r) { return (int64_t{1} << (r - 1)) - 1; }

int ceil_log2(uint64_t x) {
    return x <= 1 ? 0 : 64 - std::countl_zero(x - 1);
}

} // namespace

IsingGraph::IsingGraph(int64_t num_spins, int resolution) {
    if (num_spins < 1 || num_spins > (int64_t{1} << 30)) {
        throw InvalidArgument("num_spins must be in [1, 2^30], got " +
                              std::to_string(num_spins));
    }
    if (resolution < kMinResolution || resolution > kMaxResolution) {
        throw InvalidArgument("resolution must be in [2, 32], got " +
                              std::to_string(resolution));
    }
    num_spins_ = static_cast<int32_t>(num_spins);
    resolution_ = resolution;
    spins_.assign(num_spins_, Spin{+1});
    fields_.assign(num_spins_, 0);
    adjacency_.resize(num_spins_);
}

void IsingGraph::check_spin_index(int64_t i) const {
    if (i < 0 || i >= num_spins_) {
        throw InvalidArgument("spin index " + std::to_string(i) +
                              " out of range [0, " + std::to_string(num_spins_) + ")");
    }
}

void IsingGraph::add_edge(int64_t i, int64_t j, int64_t weight) {
    check_spin_index(i);
    check_spin_index(j);
    if (i == j) throw InvalidArgument("self loop on spin " + std::to_string(i));
    if (weight < ic_min(resolution_) || weight > ic_max(resolution_)) {
        throw InvalidArgument("edge weight " + std::to_string(weight) +
                              " does not fit " + std::to_string(resolution_) + " bits");
    }
    auto a = static_cast<int32_t>(std::min(i, j));
    auto b = static_cast<int32_t>(std::max(i, j));
    const uint64_t key = (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
    if (!edge_keys_.insert(key).second) {
        throw InvalidArgument("duplicate edge (" + std::to_string(a) + ", " +
                              std::to_string(b) + ")");
    }
    // Accumulator-width guard: R + ceil(log2(E+n)) + 2 must fit 64 bits.
    const uint64_t terms = edges_.size() + 1 + static_cast<uint64_t>(num_spins_);
    if (resolution_ + ceil_log2(terms) + 2 > 62) {
        throw CapacityError("graph too large for exact 64-bit accumulation");
    }
    edges_.push_back(Edge{a, b, weight});
    adjacency_[a].push_back(Neighbor{b, weight});
    adjacency_[b].push_back(Neighbor{a, weight});
}

void IsingGraph::set_field(int64_t i, int64_t value) {
    check_spin_index(i);
    if (value < ic_min(resolution_) || value > ic_max(resolution_)) {
        throw InvalidArgument("field " + std::to_string(value) +
                              " does not fit " + std::to_string(resolution_) + " bits");
    }
    fields_[i] = value;
}

int64_t IsingGraph::field(int64_t i) const {
    check_spin_index(i);
    return fields_[i];
}

int64_t IsingGraph::degree(int64_t i) const {
    check_spin_index(i);
    return static_cast<int64_t>(adjacency_[i].size());
}

std::span<const IsingGraph::Neighbor> IsingGraph::neighbors(int64_t i) const {
    check_spin_index(i);
    return adjacency_[i];
}

bool IsingGraph::has_nonzero_field() const {
    return std::any_of(fields_.begin(), fields_.end(),
                       [](int64_t h) { return h != 0; });
}

int64_t IsingGraph::nonzero_field_count() const {
    return std::count_if(fields_.begin(), fields_.end(),
                         [](int64_t h) { return h != 0; });
}

Spin IsingGraph::spin(int64_t i) const {
    check_spin_index(i);
    return spins_[i];
}

void IsingGraph::set_spin(int64_t i, int spin_value) {
    check_spin_index(i);
    if (spin_value != +1 && spin_value != -1) {
        throw InvalidArgument("spin must be +1 or -1");
    }
    spins_[i] = static_cast<Spin>(spin_value);
}

void IsingGraph::set_spins(std::span<const Spin> values) {
    if (values.size() != spins_.size()) {
        throw InvalidArgument("spin vector size mismatch");
    }
    for (Spin s : values) {
        if (s != +1 && s != -1) throw InvalidArgument("spin must be +1 or -1");
    }
    spins_.assign(values.begin(), values.end());
}

int64_t hamiltonian(const IsingGraph& graph, std::span<const Spin> spins) {
    if (spins.size() != static_cast<size_t>(graph.num_spins())) {
        throw InvalidArgument("spin vector size mismatch");
    }
    int64_t h = 0;
    for (const auto& e : graph.edges()) {
        h -= e.weight * spins[e.i] * spins[e.j];
    }
    for (int32_t i = 0; i < graph.num_spins(); ++i) {
        h -= graph.field(i) * spins[i];
    }
    return h;
}

int64_t hamiltonian(const IsingGraph& graph) {
    return hamiltonian(graph, graph.spins());
}

int64_t local_field(const IsingGraph& graph, std::span<const Spin> spins,
                    int64_t i) {
    if (spins.size() != static_cast<size_t>(graph.num_spins())) {
        throw InvalidArgument("spin vector size mismatch");
    }
    int64_t acc = 0;
    for (const auto& nb : graph.neighbors(i)) {
        acc -= nb.weight * spins[nb.id];
    }
    return acc - graph.field(i);
}

int64_t local_field(const IsingGraph& graph, int64_t i) {
    return local_field(graph, graph.spins(), i);
}

IsingGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    int64_t num_spins = 0;
    int64_t resolution = 0;
    std::vector<std::array<int64_t, 3>> edge_records;
    std::vector<std::array<int64_t, 2>> field_records;

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        auto fail = [&](const std::string& why) -> IoError {
            return IoError("graph parse error at line " + std::to_string(lineno) +
                           ": " + why);
        };
        if (tag == "ising") {
            if (have_header) throw fail("duplicate header");
            if (!(ls >> num_spins >> resolution)) throw fail("bad header");
            have_header = true;
        } else if (tag == "h") {
            int64_t i, v;
            if (!(ls >> i >> v)) throw fail("bad field record");
            field_records.push_back({i, v});
        } else if (tag == "e") {
            int64_t i, j, w;
            if (!(ls >> i >> j >> w)) throw fail("bad edge record");
            edge_records.push_back({i, j, w});
        } else {
            throw fail("unknown record '" + tag + "'");
        }
    }
    if (!have_header) throw IoError("graph parse error: missing 'ising' header");

    try {
        IsingGraph g(num_spins, static_cast<int>(resolution));
        for (const auto& f : field_records) g.set_field(f[0], f[1]);
        for (const auto& e : edge_records) g.add_edge(e[0], e[1], e[2]);
        return g;
    } catch (const InvalidArgument& ex) {
        throw IoError(std::string("graph parse error: ") + ex.what());
    }
}

std::string format_graph(const IsingGraph& graph) {
    std::ostringstream out;
    out << "ising " << graph.num_spins() << ' ' << graph.resolution() << '\n';
    for (int32_t i = 0; i < graph.num_spins(); ++i) {
        if (graph.field(i) != 0) {
            out << "h " << i << ' ' << graph.field(i) << '\n';
        }
    }
    auto edges = graph.edges();
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    for (const auto& e : edges) {
        out << "e " << e.i << ' ' << e.j << ' ' << e.weight << '\n';
    }
    return out.str();
}

IsingGraph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

void save_graph(const IsingGraph& graph, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write graph file: " + path);
    out << format_graph(graph);
    if (!out) throw IoError("write failed: " + path);
}

} // namespace sachi
