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

#include "sachi/tiles.hpp"

#include <string>

#include "sachi/errors.hpp"

namespace sachi {

void validate(const TileConfig& cfg) {
    if (cfg.tiles < 1 || cfg.rows < 1 || cfg.cols < 1 ||
        cfg.tile_capacity_bits < 1 || cfg.refill_bits_per_cycle < 1) {
        throw InvalidArgument("tile configuration values must be positive");
    }
}

uint64_t tuple_store_bits(Design design, int64_t neighbors, int64_t resolution) {
    const auto n = static_cast<uint64_t>(neighbors);
    const auto r = static_cast<uint64_t>(resolution);
    switch (design) {
        case Design::N1a:
        case Design::N1b: return n;
        case Design::N2: return n * r;
        case Design::N3: return n * (r + 1);
    }
    return 0;
}

const std::vector<int32_t>& TileMapping::resident(int32_t round,
                                                  int32_t tile) const {
    return resident_.at(round).at(tile);
}

uint64_t TileMapping::round_tile_bits(int32_t round, int32_t tile) const {
    return bits_.at(round).at(tile);
}

TileMapping map_tiles(const StorageArray& storage, const TileConfig& cfg,
                      Design design) {
    validate(cfg);
    TileMapping m;
    m.design_ = design;
    m.interleave_ =
        design == Design::N1a ? Interleave::Sequential : Interleave::Strided;
    m.config_ = cfg;
    m.slots_.resize(storage.tuples.size());

    std::vector<int32_t> rows_used(cfg.tiles, 0);
    std::vector<uint64_t> bits_used(cfg.tiles, 0);
    auto open_round = [&] {
        m.resident_.emplace_back(cfg.tiles);
        m.bits_.emplace_back(cfg.tiles, 0);
        std::fill(rows_used.begin(), rows_used.end(), 0);
        std::fill(bits_used.begin(), bits_used.end(), 0);
    };
    open_round();
    int32_t round = 0;
    int32_t seq_tile = 0;

    auto fits = [&](int32_t tile, int32_t phys_rows, uint64_t bits) {
        return rows_used[tile] + phys_rows <= cfg.rows &&
               bits_used[tile] + bits <= cfg.tile_capacity_bits;
    };

    for (size_t k = 0; k < storage.tuples.size(); ++k) {
        const auto& t = storage.tuples[k];
        const uint64_t bits = tuple_store_bits(design, t.size(), storage.resolution);
        const auto phys_rows = static_cast<int32_t>(
            bits == 0 ? 1 : (bits + cfg.cols - 1) / cfg.cols);
        if (phys_rows > cfg.rows || bits > cfg.tile_capacity_bits) {
            throw CapacityError("tuple of spin " + std::to_string(t.owner) +
                                " (" + std::to_string(bits) +
                                " bits) cannot fit a single tile");
        }

        int32_t tile = -1;
        if (m.interleave_ == Interleave::Sequential) {
            while (seq_tile < cfg.tiles && !fits(seq_tile, phys_rows, bits)) {
                ++seq_tile;
            }
            if (seq_tile == cfg.tiles) {
                ++round;
                open_round();
                seq_tile = 0;
            }
            tile = seq_tile;
        } else {
            const auto want = static_cast<int32_t>(k % cfg.tiles);
            for (int32_t probe = 0; probe < cfg.tiles; ++probe) {
                const int32_t cand = (want + probe) % cfg.tiles;
                if (fits(cand, phys_rows, bits)) {
                    tile = cand;
                    break;
                }
            }
            if (tile < 0) {
                ++round;
                open_round();
                tile = want;
            }
        }

        auto& slot = m.slots_[k];
        slot.round = round;
        slot.tile = tile;
        slot.row = rows_used[tile];
        slot.phys_rows = phys_rows;
        slot.bits = bits;
        rows_used[tile] += phys_rows;
        bits_used[tile] += bits;
        m.resident_[round][tile].push_back(static_cast<int32_t>(k));
        m.bits_[round][tile] += bits;
    }

    m.rounds_ = round + 1;
    return m;
}

} // namespace sachi
