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

#include "sachi/engine.hpp"

#include <algorithm>
#include <bit>

#include "sachi/bitcompute.hpp"
#include "sachi/errors.hpp"

namespace sachi {

namespace {

uint64_t mask_bits(int width) {
    return width >= 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
}

int64_t sign_extend(uint64_t word, int width) {
    const uint64_t sign = uint64_t{1} << (width - 1);
    return static_cast<int64_t>((word ^ sign) - sign);
}

int ceil_log2(uint64_t x) {
    return x <= 1 ? 0 : 64 - std::countl_zero(x - 1);
}

// Word-parallel form of the spin-stationary / coefficient-stationary XNOR
// path: per-bit XNOR of the coefficient word with the replicated spin bit,
// widened by one more XNOR of the sign bit, conditional increment. Equal to
// bit-serial xnor_dot by construction of XNOR.
int64_t xnor_path_product(uint32_t j_bits, int r, uint8_t sigma_bit) {
    uint64_t word = sigma_bit ? j_bits : (~uint64_t{j_bits} & mask_bits(r));
    const uint8_t sign = (j_bits >> (r - 1)) & 1u;
    const uint8_t ext = sigma_bit ? sign : static_cast<uint8_t>(sign ^ 1u);
    word |= uint64_t{ext} << r;
    if (!sigma_bit) word = (word + 1) & mask_bits(r + 1);
    return sign_extend(word, r + 1);
}

// Mixed-stationary path: the row is driven by sigma_i, the equality XNOR
// selects straight or inverted readout and sigma_j places the increment.
int64_t mixed_path_product(uint32_t j_bits, int r, uint8_t sigma_i,
                           uint8_t sigma_j) {
    const uint8_t eq = static_cast<uint8_t>(~(sigma_i ^ sigma_j) & 1u);
    uint64_t word = sigma_i ? j_bits : (~uint64_t{j_bits} & mask_bits(r));
    uint8_t ext = sigma_i ? static_cast<uint8_t>((j_bits >> (r - 1)) & 1u)
                          : static_cast<uint8_t>(((j_bits >> (r - 1)) & 1u) ^ 1u);
    if (!eq) {
        word = ~word & mask_bits(r);
        ext ^= 1u;
    }
    word |= uint64_t{ext} << r;
    const bool increment = eq ? (sigma_i == 0) : (sigma_j == 0);
    if (increment) word = (word + 1) & mask_bits(r + 1);
    return sign_extend(word, r + 1);
}

// Round-by-round phase-1 makespans and refill exposure, derived from the
// mapping alone. A round's refill overlaps the previous round's compute
// window; the wrap-around refill of round 0 overlaps the last round once
// per iteration. Exposed remainders stall the pipeline.
struct Timing {
    std::vector<uint64_t> round_makespan;
    std::vector<uint64_t> round_refill_cycles;
    std::vector<uint64_t> round_rows;
    uint64_t steady_cycles = 0;
    uint64_t refill_stalls = 0;
    uint64_t total_phys_rows = 0;
};

Timing compute_timing(const StorageArray& storage, const TileMapping& mapping,
                      const TileConfig& cfg, Design design) {
    Timing t;
    const int32_t rounds = mapping.rounds();
    t.round_makespan.assign(rounds, 0);
    t.round_refill_cycles.assign(rounds, 0);
    t.round_rows.assign(rounds, 0);
    for (int32_t r = 0; r < rounds; ++r) {
        for (int32_t tile = 0; tile < cfg.tiles; ++tile) {
            uint64_t span = 0;
            for (int32_t k : mapping.resident(r, tile)) {
                span += static_cast<uint64_t>(
                    spin_schedule(design, storage.tuples[k].size(),
                                  storage.resolution)
                        .p1_cycles);
                t.round_rows[r] +=
                    static_cast<uint64_t>(mapping.slot(k).phys_rows);
            }
            t.round_makespan[r] = std::max(t.round_makespan[r], span);
            const uint64_t bits = mapping.round_tile_bits(r, tile);
            const uint64_t cycles = (bits + cfg.refill_bits_per_cycle - 1) /
                                    cfg.refill_bits_per_cycle;
            t.round_refill_cycles[r] = std::max(t.round_refill_cycles[r], cycles);
        }
        t.total_phys_rows += t.round_rows[r];
    }
    for (int32_t r = 0; r < rounds; ++r) t.steady_cycles += t.round_makespan[r];
    if (rounds > 1) {
        for (int32_t r = 0; r < rounds; ++r) {
            const uint64_t incoming = t.round_refill_cycles[(r + 1) % rounds];
            const uint64_t window = t.round_makespan[r];
            if (incoming > window) t.refill_stalls += incoming - window;
        }
        t.steady_cycles += t.refill_stalls;
    }
    return t;
}

} // namespace

DesignFigures analyze_design(const IsingGraph& graph, Design design,
                             const EngineOptions& options) {
    DesignFigures out;
    const StorageArray storage =
        build_storage(graph, options.storage_capacity_bytes);
    const TileMapping mapping = map_tiles(storage, options.tiles, design);
    const Timing timing =
        compute_timing(storage, mapping, options.tiles, design);
    out.cpi = timing.steady_cycles;
    out.rounds = mapping.rounds();
    out.refill_stall_cycles = timing.refill_stalls;
    out.storage_overflow = storage.overflow;

    uint64_t required = 0;
    uint64_t fetches = 0;
    const auto r = static_cast<uint64_t>(graph.resolution());
    for (const auto& tuple : storage.tuples) {
        const auto n = static_cast<uint64_t>(tuple.size());
        if (n == 0) continue;
        required += n * r;
        switch (design) {
            case Design::N1a:
            case Design::N1b: fetches += n * r; break;
            case Design::N2: fetches += n; break;
            case Design::N3: fetches += 1; break;
        }
        out.queue_peak = std::max(
            out.queue_peak,
            static_cast<uint64_t>(
                spin_schedule(design, tuple.size(), storage.resolution)
                    .queue_peak));
    }
    out.reuse = fetches > 0 ? static_cast<double>(required) /
                                  static_cast<double>(fetches)
                            : 0.0;
    return out;
}

TraceTotals& TraceTotals::operator+=(const TraceTotals& other) {
    cpi += other.cpi;
    p1_cycles += other.p1_cycles;
    rwl_activations += other.rwl_activations;
    xnor_ops += other.xnor_ops;
    required_computes += other.required_computes;
    redundant_computes += other.redundant_computes;
    equality_ops += other.equality_ops;
    rbl_discharges += other.rbl_discharges;
    queue_peak = std::max(queue_peak, other.queue_peak);
    operand_fetches += other.operand_fetches;
    fetch_bits += other.fetch_bits;
    refresh_bits += other.refresh_bits;
    writeback_bits += other.writeback_bits;
    refill_bits += other.refill_bits;
    refill_stall_cycles += other.refill_stall_cycles;
    logic_bit_ops += other.logic_bit_ops;
    prefetch_requests += other.prefetch_requests;
    rounds = std::max(rounds, other.rounds);
    return *this;
}

uint64_t cycles_per_iteration(const TraceTotals& totals) { return totals.cpi; }

double reuse_factor(const TraceTotals& totals) {
    if (totals.operand_fetches == 0) return 0.0;
    return static_cast<double>(totals.required_computes) /
           static_cast<double>(totals.operand_fetches);
}

int64_t per_spin_reuse(Design design, int64_t neighbors, int64_t resolution) {
    switch (design) {
        case Design::N1a:
        case Design::N1b: return neighbors > 0 ? 1 : 0;
        case Design::N2: return neighbors > 0 ? resolution : 0;
        case Design::N3: return neighbors * resolution;
    }
    return 0;
}

struct ArchEngine::Impl {
    IsingGraph& graph;
    Design design;
    EngineOptions options;
    StorageArray storage;
    TileMapping mapping;
    int resolution;

    // Per-tuple popcounts of the resident bits, kept for O(1) discharge
    // counting. ic_ones is static; spin_ones tracks the resident snapshot.
    std::vector<int64_t> ic_ones;
    std::vector<int64_t> spin_ones;

    std::vector<uint64_t> round_makespan;
    std::vector<uint64_t> round_rows;
    uint64_t steady_cycles = 0;
    uint64_t refill_stalls = 0;
    uint64_t total_phys_rows = 0;
    int accumulator_width = 0;

    bool first_iteration = true;
    std::vector<int64_t> pending_refresh_degrees; // flips of the last commit

    std::vector<TraceTotals> per_iteration;
    TraceTotals aggregate;
    std::vector<CycleRecord> first_cycles;

    Impl(IsingGraph& g, Design d, EngineOptions opts)
        : graph(g),
          design(d),
          options(opts),
          storage(build_storage(g, opts.storage_capacity_bytes)),
          mapping(map_tiles(storage, opts.tiles, d)),
          resolution(g.resolution()) {
        ic_ones.resize(storage.tuples.size());
        spin_ones.resize(storage.tuples.size());
        int64_t max_degree = 0;
        for (size_t k = 0; k < storage.tuples.size(); ++k) {
            const auto& t = storage.tuples[k];
            int64_t ones = 0;
            for (uint32_t w : t.ic_bits) {
                ones += std::popcount(w & static_cast<uint32_t>(mask_bits(resolution)));
            }
            ic_ones[k] = ones;
            max_degree = std::max(max_degree, t.size());
        }
        accumulator_width =
            resolution + ceil_log2(static_cast<uint64_t>(max_degree) + 1) + 2;
        precompute_timing();
    }

    void precompute_timing() {
        const Timing timing =
            compute_timing(storage, mapping, options.tiles, design);
        round_makespan = timing.round_makespan;
        round_rows = timing.round_rows;
        steady_cycles = timing.steady_cycles;
        refill_stalls = timing.refill_stalls;
        total_phys_rows = timing.total_phys_rows;
    }

    void refresh_tiles(TraceTotals& totals) {
        // Resident neighbour-spin bits follow the snapshot. The storage
        // array was already committed by the write-back, so only the tile
        // copies move: one bit per tuple entry holding a flipped spin.
        if (design == Design::N2) return; // only coefficients are resident
        if (first_iteration) return;      // initial fill is part of loading
        if (mapping.rounds() > 1) return;  // full refill accounted separately
        for (int64_t deg : pending_refresh_degrees) {
            totals.refresh_bits += static_cast<uint64_t>(deg);
        }
    }

    void tally_tuple(const SpinTuple& t, uint8_t owner_bit, TraceTotals& totals,
                     size_t k) {
        const int64_t n = t.size();
        if (n == 0) return;
        const auto un = static_cast<uint64_t>(n);
        const auto ur = static_cast<uint64_t>(resolution);
        const int64_t pop_spin = spin_ones[k];
        const int64_t pop_ic = ic_ones[k];
        const int64_t total_ic_bits = n * resolution;

        switch (design) {
            case Design::N1a:
            case Design::N1b: {
                // One coefficient bit per cycle across the row of spins.
                totals.rwl_activations += un * ur;
                totals.xnor_ops += un * ur * un;
                totals.required_computes += un * ur;
                totals.redundant_computes += un * ur * (un - 1);
                totals.operand_fetches += un * ur;
                totals.fetch_bits += un * ur;
                // Cycles driving a 1 discharge the stored-1 columns, cycles
                // driving a 0 discharge the stored-0 columns.
                totals.rbl_discharges +=
                    static_cast<uint64_t>(pop_ic * pop_spin +
                                          (total_ic_bits - pop_ic) * (n - pop_spin));
                totals.queue_peak = std::max(
                    totals.queue_peak,
                    static_cast<uint64_t>(
                        spin_schedule(design, n, resolution).queue_peak));
                break;
            }
            case Design::N2: {
                // One neighbour spin per cycle, R columns enabled, whole row
                // evaluates.
                totals.rwl_activations += un;
                totals.xnor_ops += un * un * ur;
                totals.required_computes += un * ur;
                totals.redundant_computes += un * (un - 1) * ur;
                totals.operand_fetches += un;
                totals.fetch_bits += un;
                totals.rbl_discharges += static_cast<uint64_t>(
                    pop_spin * pop_ic +
                    (n - pop_spin) * (total_ic_bits - pop_ic));
                break;
            }
            case Design::N3: {
                // One activation per spin; every occupied cell is useful.
                totals.rwl_activations += 1;
                totals.xnor_ops += un * ur;
                totals.required_computes += un * ur;
                totals.equality_ops += un;
                totals.operand_fetches += 1;
                totals.fetch_bits += 1;
                if (owner_bit) {
                    totals.rbl_discharges +=
                        static_cast<uint64_t>(pop_ic + pop_spin);
                } else {
                    totals.rbl_discharges += static_cast<uint64_t>(
                        (total_ic_bits - pop_ic) + (n - pop_spin));
                }
                break;
            }
        }
        const auto aw = static_cast<uint64_t>(accumulator_width);
        totals.logic_bit_ops += un * (ur + 1) + un + un * aw + aw;
    }

    void compute_fields(std::span<const Spin> snapshot,
                        std::vector<int64_t>& h_sigma) {
        TraceTotals totals;
        totals.rounds = static_cast<uint32_t>(mapping.rounds());
        totals.cpi = steady_cycles;
        totals.refill_stall_cycles = refill_stalls;

        if (first_iteration) {
            refresh_neighbor_spins(storage, snapshot);
        }
        refresh_tiles(totals);
        if (mapping.rounds() > 1) {
            for (int32_t r = 0; r < mapping.rounds(); ++r) {
                for (int32_t t = 0; t < options.tiles.tiles; ++t) {
                    totals.refill_bits += mapping.round_tile_bits(r, t);
                }
            }
        }
        if (storage.overflow) {
            auto counter = make_prefetch_counter(total_phys_rows,
                                                 options.prefetch_threshold_rows);
            for (int32_t r = 0; r < mapping.rounds(); ++r) {
                counter = prefetch_step(counter, round_rows[r]);
            }
            totals.prefetch_requests = counter.requests_issued;
        }

        // Phase 1-4: per tuple, compose exact products from resident bits
        // onto the field-initialized accumulator, then negate.
        for (size_t k = 0; k < storage.tuples.size(); ++k) {
            auto& t = storage.tuples[k];
            int64_t ones = 0;
            for (uint8_t b : t.neighbor_spins) ones += b;
            spin_ones[k] = ones;

            const uint8_t owner_bit = encode_spin(snapshot[t.owner]);
            int64_t acc = t.field;
            if (design == Design::N3) {
                for (int64_t m = 0; m < t.size(); ++m) {
                    acc += mixed_path_product(t.ic_bits[m], resolution,
                                              owner_bit, t.neighbor_spins[m]);
                }
            } else {
                for (int64_t m = 0; m < t.size(); ++m) {
                    acc += xnor_path_product(t.ic_bits[m], resolution,
                                             t.neighbor_spins[m]);
                }
            }
            h_sigma[t.owner] = -acc;
            tally_tuple(t, owner_bit, totals, k);
        }
        for (int32_t r = 0; r < mapping.rounds(); ++r) {
            totals.p1_cycles += round_makespan[r];
        }

        if (options.record_cycles && first_iteration) record_cycles();
        first_iteration = false;
        per_iteration.push_back(totals);
        aggregate += totals;
    }

    void on_iteration_end(std::span<const Spin> snapshot,
                          std::span<const Spin> working) {
        pending_refresh_degrees.clear();
        for (int32_t i = 0; i < graph.num_spins(); ++i) {
            if (snapshot[i] != working[i]) {
                pending_refresh_degrees.push_back(graph.degree(i));
            }
        }
        const uint64_t bits = write_back_flips(storage, snapshot, working);
        per_iteration.back().writeback_bits += bits;
        aggregate.writeback_bits += bits;
    }

    void record_cycles() {
        uint64_t base = 0;
        for (int32_t r = 0; r < mapping.rounds(); ++r) {
            uint64_t round_span = 0;
            for (int32_t t = 0; t < options.tiles.tiles; ++t) {
                uint64_t cursor = 0;
                std::vector<CycleRecord> rows;
                std::vector<uint64_t> p3_marks;
                for (int32_t k : mapping.resident(r, t)) {
                    const auto& tup = storage.tuples[k];
                    const uint64_t start = cursor;
                    for_each_schedule_cycle(
                        design, tup.size(), resolution,
                        [&](const ScheduleCycle& cy) {
                            CycleRecord rec;
                            rec.cycle = base + start + cy.cycle;
                            rec.tile = t;
                            rec.phase_mask = 0x01; // P1
                            if (cy.enqueued > 0 || cy.queue_occupancy > 0)
                                rec.phase_mask |= 0x02; // P2
                            if (cy.group_ready) {
                                rec.phase_mask |= 0x04; // P3
                                p3_marks.push_back(rec.cycle);
                            }
                            rec.rwl_count = 1;
                            rec.col_enables =
                                static_cast<uint32_t>(cy.column_enables);
                            rec.queue_occ =
                                static_cast<uint32_t>(cy.queue_occupancy);
                            rows.push_back(rec);
                        });
                    cursor += static_cast<uint64_t>(
                        spin_schedule(design, tup.size(), resolution).p1_cycles);
                    // Phase 4 trails each shift-add by one cycle; phase 5
                    // fires one cycle after the tuple's last accumulate.
                    const uint64_t p5_cycle = base + cursor + 2;
                    CycleRecord p5;
                    p5.cycle = p5_cycle;
                    p5.tile = t;
                    p5.phase_mask = 0x10;
                    rows.push_back(p5);
                }
                for (uint64_t mark : p3_marks) {
                    CycleRecord p4;
                    p4.cycle = mark + 1;
                    p4.tile = t;
                    p4.phase_mask = 0x08;
                    rows.push_back(p4);
                }
                // Merge rows that landed on the same cycle.
                std::sort(rows.begin(), rows.end(),
                          [](const CycleRecord& a, const CycleRecord& b) {
                              return a.cycle < b.cycle;
                          });
                std::vector<CycleRecord> merged;
                for (const auto& rec : rows) {
                    if (!merged.empty() && merged.back().cycle == rec.cycle) {
                        merged.back().phase_mask |= rec.phase_mask;
                        merged.back().rwl_count =
                            std::max(merged.back().rwl_count, rec.rwl_count);
                        merged.back().col_enables =
                            std::max(merged.back().col_enables, rec.col_enables);
                        merged.back().queue_occ =
                            std::max(merged.back().queue_occ, rec.queue_occ);
                    } else {
                        merged.push_back(rec);
                    }
                }
                first_cycles.insert(first_cycles.end(), merged.begin(),
                                    merged.end());
                round_span = std::max(round_span, cursor);
            }
            base += round_makespan[r];
        }
        std::sort(first_cycles.begin(), first_cycles.end(),
                  [](const CycleRecord& a, const CycleRecord& b) {
                      return a.cycle != b.cycle ? a.cycle < b.cycle
                                                : a.tile < b.tile;
                  });
    }
};

ArchEngine::ArchEngine(IsingGraph& graph, Design design, EngineOptions options)
    : impl_(std::make_unique<Impl>(graph, design, options)) {}

ArchEngine::~ArchEngine() = default;

SolveResult ArchEngine::solve(const AnnealConfig& cfg) {
    impl_->per_iteration.clear();
    impl_->aggregate = TraceTotals{};
    impl_->first_cycles.clear();
    impl_->first_iteration = true;
    impl_->pending_refresh_degrees.clear();

    SweepHooks hooks;
    hooks.compute_fields = [this](std::span<const Spin> snapshot,
                                  std::vector<int64_t>& h_sigma) {
        impl_->compute_fields(snapshot, h_sigma);
    };
    hooks.on_iteration_end = [this](int64_t, std::span<const Spin> snapshot,
                                    std::span<const Spin> working) {
        impl_->on_iteration_end(snapshot, working);
    };
    return solve_with(impl_->graph, cfg, hooks);
}

Design ArchEngine::design() const { return impl_->design; }
const StorageArray& ArchEngine::storage() const { return impl_->storage; }
const TileMapping& ArchEngine::mapping() const { return impl_->mapping; }
const TraceTotals& ArchEngine::totals() const { return impl_->aggregate; }

const std::vector<TraceTotals>& ArchEngine::iteration_totals() const {
    return impl_->per_iteration;
}

const std::vector<CycleRecord>& ArchEngine::first_iteration_cycles() const {
    return impl_->first_cycles;
}

uint64_t ArchEngine::steady_cpi() const { return impl_->steady_cycles; }

double ArchEngine::average_reuse() const {
    if (impl_->per_iteration.empty()) return 0.0;
    return reuse_factor(impl_->per_iteration.front());
}

} // namespace sachi
