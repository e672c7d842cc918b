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

#ifndef SACHI_TILES_HPP
#define SACHI_TILES_HPP

#include <cstdint>
#include <vector>

#include "sachi/schedule.hpp"
#include "sachi/storage.hpp"

namespace sachi {

// Compute-array geometry: 16 tiles of 100 data rows (complement rows are
// implicit doubles) x 100 columns, 10KB of cell capacity each. The refill
// bus moves data bits at 512 bits/cycle per tile when rounds swap;
// complements are regenerated by local inverting drivers.
struct TileConfig {
    int32_t tiles = 16;
    int32_t rows = 100;
    int32_t cols = 100;
    uint64_t tile_capacity_bits = 10 * 1024 * 8;
    int64_t refill_bits_per_cycle = 512;
};

void validate(const TileConfig& cfg);

// n1a keeps successive tuples in the same tile; every other design spreads
// adjacent tuples across adjacent tiles for load balance.
enum class Interleave : uint8_t { Sequential, Strided };

// Cell bits one tuple occupies, by stationarity:
//   n1a/n1b  the N neighbour-spin bits
//   n2       the N*R coefficient bits
//   n3       coefficient bits plus the N neighbour-spin (equality) bits
// Spin-id bookkeeping is not stored in the tile.
uint64_t tuple_store_bits(Design design, int64_t neighbors, int64_t resolution);

// Placement of one tuple: a single logical row of some tile in some round.
struct TileSlot {
    int32_t round = 0;
    int32_t tile = 0;
    int32_t row = 0;       // first physical row
    int32_t phys_rows = 1; // ceil(bits/cols), at least 1
    uint64_t bits = 0;
};

class TileMapping {
public:
    Design design() const { return design_; }
    Interleave interleave() const { return interleave_; }
    const TileConfig& config() const { return config_; }
    int32_t rounds() const { return rounds_; }
    const TileSlot& slot(int64_t tuple) const { return slots_[tuple]; }
    // Tuples resident in (round, tile), in row order.
    const std::vector<int32_t>& resident(int32_t round, int32_t tile) const;
    uint64_t round_tile_bits(int32_t round, int32_t tile) const;

private:
    friend TileMapping map_tiles(const StorageArray&, const TileConfig&, Design);
    Design design_ = Design::N1a;
    Interleave interleave_ = Interleave::Sequential;
    TileConfig config_;
    int32_t rounds_ = 0;
    std::vector<TileSlot> slots_;
    std::vector<std::vector<std::vector<int32_t>>> resident_; // [round][tile]
    std::vector<std::vector<uint64_t>> bits_;                 // [round][tile]
};

// Assigns every tuple a (round, tile, row). n1a fills tiles sequentially;
// the other designs stride adjacent tuples across adjacent tiles. A new
// round starts when no tile of the current round can take the tuple; a
// tuple that cannot fit an empty tile at all throws CapacityError.
TileMapping map_tiles(const StorageArray& storage, const TileConfig& cfg,
                      Design design);

} // namespace sachi

#endif // SACHI_TILES_HPP
