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

#ifndef SACHI_STORAGE_HPP
#define SACHI_STORAGE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "sachi/graph.hpp"

namespace sachi {

inline constexpr uint64_t kDefaultStorageBytes = 160 * 1024;
inline constexpr int kDefaultStorageReadPorts = 2;

// One storage-array row: everything the compute of a single spin needs.
// Every edge appears in the tuples of both endpoints ("tuple-rep"), which is
// what decouples per-spin compute across tiles.
struct SpinTuple {
    int32_t owner = 0;
    std::vector<int32_t> neighbor_ids;
    std::vector<uint8_t> neighbor_spins; // encoded bits, +1 -> 1
    std::vector<uint32_t> ic_bits;       // R-bit two's-complement words
    int64_t field = 0;

    int64_t size() const { return static_cast<int64_t>(neighbor_ids.size()); }
};

// Symmetric zero-diagonal bit matrix; dense words up to `dense_limit` spins,
// CSR-backed view beyond that (same queries, no n^2 memory).
class AdjacencyMatrix {
public:
    static AdjacencyMatrix build(const IsingGraph& graph,
                                 int64_t dense_limit = 4096);

    bool get(int64_t i, int64_t j) const;
    bool dense() const { return dense_; }
    int32_t size() const { return n_; }
    void for_each_set(int64_t row, const std::function<void(int32_t)>& fn) const;

private:
    int32_t n_ = 0;
    bool dense_ = false;
    int64_t words_per_row_ = 0;
    std::vector<uint64_t> bits_;          // dense backing
    std::vector<int64_t> row_offsets_;    // CSR backing
    std::vector<int32_t> row_neighbors_;
};

// The L2-resident image of the graph: one tuple per spin plus the adjacency
// matrix. `payload_bits` is what actually streams from DRAM (neighbour spin
// bits + coefficient bits + nonzero fields); `occupancy_bits` adds the
// neighbour-id bookkeeping and drives the capacity/overflow check.
struct StorageArray {
    int32_t num_spins = 0;
    int resolution = 0;
    std::vector<SpinTuple> tuples;
    AdjacencyMatrix adjacency;
    uint64_t capacity_bytes = kDefaultStorageBytes;
    int read_ports = kDefaultStorageReadPorts;
    uint64_t payload_bits = 0;
    uint64_t occupancy_bits = 0;
    bool overflow = false; // occupancy exceeds capacity: multi-round via DRAM
};

StorageArray build_storage(const IsingGraph& graph,
                           uint64_t capacity_bytes = kDefaultStorageBytes);

// Pure arithmetic versions, usable without materializing tuples.
uint64_t storage_payload_bits(int64_t total_neighbors, int resolution,
                              int64_t nonzero_fields);
uint64_t storage_occupancy_bits(int64_t num_spins, int64_t total_neighbors,
                                int resolution, int64_t nonzero_fields);

// Replaces every stored neighbour-spin bit from `spins`.
void refresh_neighbor_spins(StorageArray& storage, std::span<const Spin> spins);

// Commits a sweep: for every spin whose value changed, the adjacency row
// names the tuples holding it, and exactly those get the new bit. Returns
// bits moved (one per updated tuple entry plus one per flipped spin's own
// state).
uint64_t write_back_flips(StorageArray& storage, std::span<const Spin> before,
                          std::span<const Spin> after);

// DRAM-side prefetch bookkeeping: a counter tracks rows not yet consumed and
// fires one request per round when it first reaches the threshold (the
// DRAM-to-storage plus storage-to-compute latency expressed in rows).
// threshold == 0 disables prefetch (problem lives on chip).
struct PrefetchCounter {
    uint64_t remaining_rows = 0;
    uint64_t threshold = 0;
    uint64_t requests_issued = 0;
};

PrefetchCounter make_prefetch_counter(uint64_t remaining_rows, uint64_t threshold);
PrefetchCounter prefetch_step(PrefetchCounter counter, uint64_t rows_consumed);

} // namespace sachi

#endif // SACHI_STORAGE_HPP
