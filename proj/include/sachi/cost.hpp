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

#ifndef SACHI_COST_HPP
#define SACHI_COST_HPP

#include <cstdint>

#include "sachi/engine.hpp"
#include "sachi/graph.hpp"

namespace sachi {

// 45nm-class electrical constants. Dynamic energy per switching event is
// E = C*V^2 (full charge/discharge attribution); halve the capacitance to
// get the 1/2*C*V^2 convention. Digital logic uses a per-bit-op proxy since
// synthesis numbers are technology locked.
struct TechParams {
    double cycle_time = 5e-9;                  // s
    double vdd = 1.0;                          // V
    double c_rwl = 50e-15;                     // F
    double c_rbl = 35e-15;                     // F
    double sram_compute_latency = 2e-9;        // s
    double movement_energy_per_bit = 1e-12;    // J
    double storage_to_compute_latency = 100e-9;// s
    double dram_bytes_per_cycle = 64.0;
    double dram_latency = 20e-9;               // s, prefetch threshold input
    double logic_energy_per_bit_op = 10e-15;   // J
};

void validate(const TechParams& tech);

// Prefetch threshold in row-equivalents: DRAM-to-storage plus
// storage-to-compute latency, expressed in cycles.
uint64_t prefetch_threshold_rows(const TechParams& tech);

struct BaselineParams {
    int64_t brim_cycles_best = 4;
    int64_t brim_cycles_worst = 13;
    double brim_osc_power = 0.250;       // W at the reference operating point
    double brim_osc_ref_spins = 2000.0;
    double brim_osc_ref_neighbors = 100.0;
    double dac_power = 4e-6;             // W per DAC
    int64_t dac_count = 16;              // one per bank
    double brim_logic_power = 0.8e-3;    // W, 16:1x8b mux + 128 flops per bank
    int64_t isingcim_cycles_per_xnor = 3;
    double isingcim_power_scale = 1.2;   // eDRAM vs 8T SRAM per event
    int64_t isingcim_update_cycles = 2;  // per spin, vs 1-cycle compute+update
    double isingcim_background_power = 1e-3; // W, eDRAM refresh + periphery
};

struct EnergyBreakdown {
    double rwl = 0.0;
    double rbl = 0.0;
    double movement = 0.0;
    double logic = 0.0;
    double loading = 0.0;
    double total() const { return rwl + rbl + movement + logic + loading; }
};

struct CostReport {
    uint64_t cycles = 0;
    double execution_time = 0.0; // cycles * cycle_time
    EnergyBreakdown breakdown;
    double total_energy = 0.0;
    double average_power = 0.0;
};

struct LoadingCost {
    uint64_t bits = 0;
    uint64_t cycles = 0;
    double energy = 0.0;
    bool storage_overflow = false; // needs multi-round DRAM streaming
};

// One-time DRAM fill of the problem at 64B/cycle and 1pJ/bit. The payload
// is the compute data (neighbour spins, coefficients, nonzero fields).
LoadingCost loading_cost(const IsingGraph& graph, const TechParams& tech);
LoadingCost loading_cost_from_stats(int64_t num_spins, int64_t total_neighbors,
                                    int resolution, int64_t nonzero_fields,
                                    const TechParams& tech);

// Per-XNOR-event array energies; the eDRAM baseline pays the published
// scale factor per event.
double sram_xnor_event_energy(const TechParams& tech);
double isingcim_xnor_event_energy(const TechParams& tech,
                                  const BaselineParams& params);

// Energy/latency report for a simulated run (aggregate trace totals).
CostReport sachi_cost(const TraceTotals& totals, const TechParams& tech,
                      const LoadingCost& loading, bool include_loading);

struct GraphStats {
    int64_t spins = 0;
    int64_t total_neighbors = 0;   // sum of degrees = 2E
    int64_t sum_sq_neighbors = 0;  // sum of squared degrees
    double avg_neighbors = 0.0;
    int resolution = 0;
    int64_t nonzero_fields = 0;
};

GraphStats graph_stats(const IsingGraph& graph);

enum class BrimMode : uint8_t { Best, Worst };

// Closed-form resistive coupled-oscillator baseline: serial H compute over
// spins and neighbours at 4 (best) or 13 (worst) cycles each; oscillator
// power scales with spins*neighbors from the published operating point,
// plus per-bank DACs and mux/flop logic.
CostReport brim_cost(const GraphStats& stats, int64_t iterations,
                     const BaselineParams& params, const TechParams& tech,
                     BrimMode mode, bool include_loading);

// Closed-form eDRAM compute-in-memory baseline: 3 cycles per XNOR with no
// parallelism across spins, neighbours or bits, a 2-cycle in-array update
// per spin, the published per-event power scale, and the eDRAM macro's
// refresh/peripheral power burning over the (much longer) serial runtime.
// Only applicable to King's graphs with at most 2-bit coefficients; throws
// Unsupported otherwise. Array activity (discharges) is modeled at 0.5
// switching since the baseline is not data simulated.
CostReport isingcim_cost(const IsingGraph& graph, int64_t iterations,
                         const TechParams& tech, const BaselineParams& params,
                         bool include_loading);

} // namespace sachi

#endif // SACHI_COST_HPP
