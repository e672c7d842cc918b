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

#ifndef SACHI_ENGINE_HPP
#define SACHI_ENGINE_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "sachi/anneal.hpp"
#include "sachi/graph.hpp"
#include "sachi/schedule.hpp"
#include "sachi/storage.hpp"
#include "sachi/tiles.hpp"

namespace sachi {

// Per-iteration activity counters of one engine.
//
// xnor_ops counts dot-product bit computes only (required + redundant);
// spin-equality XNORs of the mixed-stationary design are tallied separately
// in equality_ops. rbl_discharges is data dependent and covers every
// evaluated cell (redundant columns discharge even though their readout is
// blocked). Movement counters are bits crossing the storage/compute
// boundary: operand fetches, flip refresh of resident rows, multi-round
// refills and the adjacency-guided write-back into the storage array.
struct TraceTotals {
    uint64_t cpi = 0;
    uint64_t p1_cycles = 0;
    uint64_t rwl_activations = 0;
    uint64_t xnor_ops = 0;
    uint64_t required_computes = 0;
    uint64_t redundant_computes = 0;
    uint64_t equality_ops = 0;
    uint64_t rbl_discharges = 0;
    uint64_t queue_peak = 0;
    uint64_t operand_fetches = 0;
    uint64_t fetch_bits = 0;
    uint64_t refresh_bits = 0;
    uint64_t writeback_bits = 0;
    uint64_t refill_bits = 0;
    uint64_t refill_stall_cycles = 0;
    uint64_t logic_bit_ops = 0;
    uint64_t prefetch_requests = 0;
    uint32_t rounds = 1;

    TraceTotals& operator+=(const TraceTotals& other);
};

uint64_t cycles_per_iteration(const TraceTotals& totals);
// Average required dot computes per operand fetched onto a compute row.
double reuse_factor(const TraceTotals& totals);
// Per-spin reuse by design contract: 1 / R / N*R.
int64_t per_spin_reuse(Design design, int64_t neighbors, int64_t resolution);

// One row of the per-cycle trace export. phase_mask has bit k-1 set when
// phase k is active (P1..P5).
struct CycleRecord {
    uint64_t cycle = 0;
    int32_t tile = 0;
    uint8_t phase_mask = 0;
    uint32_t rwl_count = 0;
    uint32_t col_enables = 0;
    uint32_t queue_occ = 0;
};

struct EngineOptions {
    TileConfig tiles;
    uint64_t storage_capacity_bytes = kDefaultStorageBytes;
    // DRAM-to-storage + storage-to-compute latency in row-equivalents;
    // engaged only when the problem overflows the storage array.
    uint64_t prefetch_threshold_rows = 24;
    bool record_cycles = false; // per-cycle trace of the first iteration
};

// Timing/reuse figures derivable from the mapping alone (no annealing run):
// used for desk-scale extrapolation of problems too large to simulate in
// full. The figures are exact, not estimates; only data-dependent energy
// activity needs the full run.
struct DesignFigures {
    uint64_t cpi = 0;
    double reuse = 0.0;
    int32_t rounds = 0;
    uint64_t refill_stall_cycles = 0;
    uint64_t queue_peak = 0;
    bool storage_overflow = false;
};

DesignFigures analyze_design(const IsingGraph& graph, Design design,
                             const EngineOptions& options = {});

// Structural simulator of one stationarity design. Phase 1 evaluates the
// in-array XNORs bit-exactly from the resident snapshot, phases 3-4 compose
// exact products onto the field-initialized accumulator, and phase 5 runs
// the shared spin-update/anneal commit, so the per-iteration Hamiltonian
// trace matches the reference solver for the same seed by construction of
// the pipeline, not by copying its results.
class ArchEngine {
public:
    ArchEngine(IsingGraph& graph, Design design, EngineOptions options = {});
    ~ArchEngine();
    ArchEngine(const ArchEngine&) = delete;
    ArchEngine& operator=(const ArchEngine&) = delete;

    SolveResult solve(const AnnealConfig& cfg);

    Design design() const;
    const StorageArray& storage() const;
    const TileMapping& mapping() const;

    // Valid after solve().
    const TraceTotals& totals() const;                       // run aggregate
    const std::vector<TraceTotals>& iteration_totals() const;
    const std::vector<CycleRecord>& first_iteration_cycles() const;
    uint64_t steady_cpi() const; // cycles per iteration, steady state
    double average_reuse() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace sachi

#endif // SACHI_ENGINE_HPP
