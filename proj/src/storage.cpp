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

#include "sachi/storage.hpp"

#include <algorithm>
#include <bit>

#include "sachi/bitcompute.hpp"
#include "sachi/errors.hpp"

namespace sachi {

namespace {

int id_bits(int64_t num_spins) {
    if (num_spins <= 1) return 0;
    return 64 - std::countl_zero(static_cast<uint64_t>(num_spins - 1));
}

} // namespace

AdjacencyMatrix AdjacencyMatrix::build(const IsingGraph& graph,
                                       int64_t dense_limit) {
    AdjacencyMatrix m;
    m.n_ = graph.num_spins();
    m.dense_ = m.n_ <= dense_limit;
    if (m.dense_) {
        m.words_per_row_ = (m.n_ + 63) / 64;
        m.bits_.assign(static_cast<size_t>(m.words_per_row_) * m.n_, 0);
        for (const auto& e : graph.edges()) {
            m.bits_[e.i * m.words_per_row_ + e.j / 64] |= uint64_t{1} << (e.j % 64);
            m.bits_[e.j * m.words_per_row_ + e.i / 64] |= uint64_t{1} << (e.i % 64);
        }
    } else {
        m.row_offsets_.assign(m.n_ + 1, 0);
        for (int32_t i = 0; i < m.n_; ++i) {
            m.row_offsets_[i + 1] = m.row_offsets_[i] + graph.degree(i);
        }
        m.row_neighbors_.resize(m.row_offsets_[m.n_]);
        std::vector<int64_t> cursor(m.row_offsets_.begin(), m.row_offsets_.end() - 1);
        for (const auto& e : graph.edges()) {
            m.row_neighbors_[cursor[e.i]++] = e.j;
            m.row_neighbors_[cursor[e.j]++] = e.i;
        }
        for (int32_t i = 0; i < m.n_; ++i) {
            std::sort(m.row_neighbors_.begin() + m.row_offsets_[i],
                      m.row_neighbors_.begin() + m.row_offsets_[i + 1]);
        }
    }
    return m;
}

bool AdjacencyMatrix::get(int64_t i, int64_t j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) {
        throw InvalidArgument("adjacency index out of range");
    }
    if (i == j) return false;
    if (dense_) {
        return (bits_[i * words_per_row_ + j / 64] >> (j % 64)) & 1u;
    }
    const auto begin = row_neighbors_.begin() + row_offsets_[i];
    const auto end = row_neighbors_.begin() + row_offsets_[i + 1];
    return std::binary_search(begin, end, static_cast<int32_t>(j));
}

void AdjacencyMatrix::for_each_set(int64_t row,
                                   const std::function<void(int32_t)>& fn) const {
    if (row < 0 || row >= n_) throw InvalidArgument("adjacency row out of range");
    if (dense_) {
        for (int64_t w = 0; w < words_per_row_; ++w) {
            uint64_t word = bits_[row * words_per_row_ + w];
            while (word) {
                const int bit = std::countr_zero(word);
                fn(static_cast<int32_t>(w * 64 + bit));
                word &= word - 1;
            }
        }
    } else {
        for (int64_t k = row_offsets_[row]; k < row_offsets_[row + 1]; ++k) {
            fn(row_neighbors_[k]);
        }
    }
}

uint64_t storage_payload_bits(int64_t total_neighbors, int resolution,
                              int64_t nonzero_fields) {
    return static_cast<uint64_t>(total_neighbors) * (resolution + 1) +
           static_cast<uint64_t>(nonzero_fields) * resolution;
}

uint64_t storage_occupancy_bits(int64_t num_spins, int64_t total_neighbors,
                                int resolution, int64_t nonzero_fields) {
    return storage_payload_bits(total_neighbors, resolution, nonzero_fields) +
           static_cast<uint64_t>(total_neighbors) * id_bits(num_spins);
}

StorageArray build_storage(const IsingGraph& graph, uint64_t capacity_bytes) {
    StorageArray s;
    s.num_spins = graph.num_spins();
    s.resolution = graph.resolution();
    s.capacity_bytes = capacity_bytes;

    s.tuples.resize(s.num_spins);
    for (int32_t i = 0; i < s.num_spins; ++i) {
        auto& t = s.tuples[i];
        t.owner = i;
        t.field = graph.field(i);
        const auto nbs = graph.neighbors(i);
        t.neighbor_ids.reserve(nbs.size());
        t.neighbor_spins.reserve(nbs.size());
        t.ic_bits.reserve(nbs.size());
        for (const auto& nb : nbs) {
            t.neighbor_ids.push_back(nb.id);
            t.neighbor_spins.push_back(encode_spin(graph.spin(nb.id)));
            t.ic_bits.push_back(encode_ic(nb.weight, s.resolution).bits);
        }
    }
    s.adjacency = AdjacencyMatrix::build(graph);

    s.payload_bits = storage_payload_bits(graph.total_degree(), s.resolution,
                                          graph.nonzero_field_count());
    s.occupancy_bits = storage_occupancy_bits(s.num_spins, graph.total_degree(),
                                              s.resolution,
                                              graph.nonzero_field_count());
    s.overflow = s.occupancy_bits > capacity_bytes * 8;
    return s;
}

void refresh_neighbor_spins(StorageArray& storage, std::span<const Spin> spins) {
    if (spins.size() != static_cast<size_t>(storage.num_spins)) {
        throw InvalidArgument("spin vector size mismatch");
    }
    for (auto& t : storage.tuples) {
        for (size_t k = 0; k < t.neighbor_ids.size(); ++k) {
            t.neighbor_spins[k] = encode_spin(spins[t.neighbor_ids[k]]);
        }
    }
}

uint64_t write_back_flips(StorageArray& storage, std::span<const Spin> before,
                          std::span<const Spin> after) {
    const auto n = static_cast<size_t>(storage.num_spins);
    if (before.size() != n || after.size() != n) {
        throw InvalidArgument("spin vector size mismatch");
    }
    uint64_t bits_moved = 0;
    for (int32_t f = 0; f < storage.num_spins; ++f) {
        if (before[f] == after[f]) continue;
        const uint8_t bit = encode_spin(after[f]);
        bits_moved += 1; // the flipped spin's own state
        storage.adjacency.for_each_set(f, [&](int32_t holder) {
            auto& t = storage.tuples[holder];
            const auto it = std::find(t.neighbor_ids.begin(),
                                      t.neighbor_ids.end(), f);
            if (it == t.neighbor_ids.end()) {
                throw CapacityError("adjacency names a tuple without the spin");
            }
            t.neighbor_spins[it - t.neighbor_ids.begin()] = bit;
            bits_moved += 1;
        });
    }
    return bits_moved;
}

PrefetchCounter make_prefetch_counter(uint64_t remaining_rows, uint64_t threshold) {
    PrefetchCounter c;
    c.remaining_rows = remaining_rows;
    c.threshold = threshold;
    if (threshold > 0 && remaining_rows <= threshold) {
        c.requests_issued = 1; // already at/below threshold: request up front
    }
    return c;
}

PrefetchCounter prefetch_step(PrefetchCounter counter, uint64_t rows_consumed) {
    if (rows_consumed > counter.remaining_rows) {
        throw InvalidArgument("consuming more rows than remain");
    }
    const uint64_t before = counter.remaining_rows;
    counter.remaining_rows -= rows_consumed;
    if (counter.threshold > 0 && before > counter.threshold &&
        counter.remaining_rows <= counter.threshold) {
        counter.requests_issued += 1;
    }
    return counter;
}

} // namespace sachi
