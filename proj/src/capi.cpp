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

#include "sachi.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "json.hpp"
#include "sachi/anneal.hpp"
#include "sachi/cost.hpp"
#include "sachi/engine.hpp"
#include "sachi/errors.hpp"
#include "sachi/graph.hpp"
#include "sachi/workloads.hpp"

namespace {

thread_local std::string g_last_error;

sachi_status fail(sachi_status status, const char* what) {
    g_last_error = what != nullptr ? what : "";
    return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
sachi_status guarded(Fn&& fn) {
    try {
        fn();
        return SACHI_OK;
    } catch (const sachi::InvalidArgument& e) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, e.what());
    } catch (const sachi::IoError& e) {
        return fail(SACHI_ERR_IO, e.what());
    } catch (const sachi::CapacityError& e) {
        return fail(SACHI_ERR_CAPACITY, e.what());
    } catch (const sachi::Unsupported& e) {
        return fail(SACHI_ERR_UNSUPPORTED, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SACHI_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SACHI_ERR_INTERNAL, e.what());
    }
}

sachi::TechParams to_tech(const sachi_tech_params* tech) {
    sachi::TechParams out;
    if (tech == nullptr) return out;
    out.cycle_time = tech->cycle_time_s;
    out.vdd = tech->vdd_v;
    out.c_rwl = tech->c_rwl_f;
    out.c_rbl = tech->c_rbl_f;
    out.sram_compute_latency = tech->sram_compute_latency_s;
    out.movement_energy_per_bit = tech->movement_energy_j_per_bit;
    out.storage_to_compute_latency = tech->storage_to_compute_latency_s;
    out.dram_bytes_per_cycle = tech->dram_bytes_per_cycle;
    out.dram_latency = tech->dram_latency_s;
    out.logic_energy_per_bit_op = tech->logic_energy_j_per_bit_op;
    return out;
}

sachi_cost_report to_report(const sachi::CostReport& report) {
    sachi_cost_report out{};
    out.cycles = report.cycles;
    out.execution_time_s = report.execution_time;
    out.rwl_j = report.breakdown.rwl;
    out.rbl_j = report.breakdown.rbl;
    out.movement_j = report.breakdown.movement;
    out.logic_j = report.breakdown.logic;
    out.loading_j = report.breakdown.loading;
    out.total_j = report.total_energy;
    out.average_power_w = report.average_power;
    return out;
}

} // namespace

struct sachi_graph {
    sachi::IsingGraph graph;
};

struct sachi_result {
    sachi_design design = SACHI_DESIGN_REFERENCE;
    sachi::SolveResult solve;
    // Architectural output; empty for reference runs.
    sachi::TraceTotals totals;
    std::vector<sachi::TraceTotals> iteration_totals;
    std::vector<sachi::CycleRecord> cycles;
    uint64_t steady_cpi = 0;
    double reuse = 0.0;
    int32_t rounds = 0;
    bool storage_overflow = false;
    // Loading inputs for cost reports.
    int64_t num_spins = 0;
    int64_t total_neighbors = 0;
    int resolution = 0;
    int64_t nonzero_fields = 0;
};

extern "C" {

const char* sachi_last_error(void) { return g_last_error.c_str(); }

const char* sachi_status_name(sachi_status status) {
    switch (status) {
        case SACHI_OK: return "ok";
        case SACHI_ERR_INVALID_ARGUMENT: return "invalid argument";
        case SACHI_ERR_IO: return "io error";
        case SACHI_ERR_CAPACITY: return "capacity error";
        case SACHI_ERR_UNSUPPORTED: return "unsupported";
        case SACHI_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

void sachi_anneal_config_init(sachi_anneal_config* cfg, int32_t resolution) {
    if (cfg == nullptr) return;
    const auto defaults = sachi::default_anneal_config(
        resolution >= 2 && resolution <= 32 ? resolution : 8);
    cfg->init_temp = defaults.init_temp;
    cfg->max_iterations = defaults.max_iterations;
    cfg->convergence_window = defaults.convergence_window;
    cfg->rng_seed = defaults.rng_seed;
}

void sachi_tech_params_init(sachi_tech_params* tech) {
    if (tech == nullptr) return;
    const sachi::TechParams d;
    tech->cycle_time_s = d.cycle_time;
    tech->vdd_v = d.vdd;
    tech->c_rwl_f = d.c_rwl;
    tech->c_rbl_f = d.c_rbl;
    tech->sram_compute_latency_s = d.sram_compute_latency;
    tech->movement_energy_j_per_bit = d.movement_energy_per_bit;
    tech->storage_to_compute_latency_s = d.storage_to_compute_latency;
    tech->dram_bytes_per_cycle = d.dram_bytes_per_cycle;
    tech->dram_latency_s = d.dram_latency;
    tech->logic_energy_j_per_bit_op = d.logic_energy_per_bit_op;
}

void sachi_tile_config_init(sachi_tile_config* tiles) {
    if (tiles == nullptr) return;
    const sachi::TileConfig d;
    tiles->tiles = d.tiles;
    tiles->rows = d.rows;
    tiles->cols = d.cols;
    tiles->tile_capacity_bits = d.tile_capacity_bits;
    tiles->refill_bits_per_cycle = d.refill_bits_per_cycle;
    tiles->storage_capacity_bytes = sachi::kDefaultStorageBytes;
    tiles->prefetch_threshold_rows =
        sachi::prefetch_threshold_rows(sachi::TechParams{});
}

sachi_status sachi_graph_create(int64_t num_spins, int32_t resolution,
                                sachi_graph** out) {
    if (out == nullptr) return fail(SACHI_ERR_INVALID_ARGUMENT, "null output");
    *out = nullptr;
    return guarded([&] {
        *out = new sachi_graph{sachi::IsingGraph(num_spins, resolution)};
    });
}

sachi_status sachi_graph_add_edge(sachi_graph* graph, int64_t i, int64_t j,
                                  int64_t weight) {
    if (graph == nullptr) return fail(SACHI_ERR_INVALID_ARGUMENT, "null graph");
    return guarded([&] { graph->graph.add_edge(i, j, weight); });
}

sachi_status sachi_graph_set_field(sachi_graph* graph, int64_t i,
                                   int64_t value) {
    if (graph == nullptr) return fail(SACHI_ERR_INVALID_ARGUMENT, "null graph");
    return guarded([&] { graph->graph.set_field(i, value); });
}

sachi_status sachi_graph_load(const char* path, sachi_graph** out) {
    if (path == nullptr || out == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] { *out = new sachi_graph{sachi::load_graph(path)}; });
}

sachi_status sachi_graph_save(const sachi_graph* graph, const char* path) {
    if (graph == nullptr || path == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] { sachi::save_graph(graph->graph, path); });
}

int64_t sachi_graph_num_spins(const sachi_graph* graph) {
    return graph == nullptr ? 0 : graph->graph.num_spins();
}

int32_t sachi_graph_resolution(const sachi_graph* graph) {
    return graph == nullptr ? 0 : graph->graph.resolution();
}

int64_t sachi_graph_num_edges(const sachi_graph* graph) {
    return graph == nullptr ? 0 : graph->graph.num_edges();
}

sachi_status sachi_graph_hamiltonian(const sachi_graph* graph, int64_t* out) {
    if (graph == nullptr || out == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] { *out = sachi::hamiltonian(graph->graph); });
}

void sachi_graph_free(sachi_graph* graph) { delete graph; }

sachi_status sachi_gen_molecular(int32_t rows, int32_t cols,
                                 int32_t resolution, uint64_t seed,
                                 sachi_graph** out) {
    if (out == nullptr) return fail(SACHI_ERR_INVALID_ARGUMENT, "null output");
    *out = nullptr;
    return guarded([&] {
        *out = new sachi_graph{
            sachi::gen_molecular(rows, cols, resolution, seed)};
    });
}

sachi_status sachi_gen_image(int32_t width, int32_t height, int32_t resolution,
                             int32_t connectivity, uint64_t seed,
                             sachi_graph** out) {
    if (out == nullptr) return fail(SACHI_ERR_INVALID_ARGUMENT, "null output");
    *out = nullptr;
    return guarded([&] {
        *out = new sachi_graph{sachi::image_to_ising(
            sachi::gen_image(width, height, seed), resolution, connectivity)};
    });
}

sachi_status sachi_gen_image_pgm(const char* path, int32_t resolution,
                                 int32_t connectivity, sachi_graph** out) {
    if (path == nullptr || out == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] {
        *out = new sachi_graph{sachi::image_to_ising(sachi::load_pgm(path),
                                                     resolution, connectivity)};
    });
}

sachi_status sachi_gen_tsp(int32_t cities, int32_t resolution, uint64_t seed,
                           sachi_graph** out) {
    if (out == nullptr) return fail(SACHI_ERR_INVALID_ARGUMENT, "null output");
    *out = nullptr;
    return guarded([&] {
        *out = new sachi_graph{
            sachi::tsp_to_ising(sachi::gen_tsp(cities, resolution, seed),
                                resolution)};
    });
}

sachi_status sachi_gen_tsp_csv(const char* path, int32_t resolution,
                               sachi_graph** out) {
    if (path == nullptr || out == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] {
        *out = new sachi_graph{
            sachi::tsp_to_ising(sachi::load_tsp_csv(path, 0), resolution)};
    });
}

sachi_status sachi_gen_assets(int64_t count, int32_t resolution, uint64_t seed,
                              int32_t star_form, int32_t force_even_split,
                              sachi_graph** out) {
    if (out == nullptr) return fail(SACHI_ERR_INVALID_ARGUMENT, "null output");
    *out = nullptr;
    return guarded([&] {
        const auto assets =
            sachi::gen_assets(count, resolution, seed, force_even_split != 0);
        *out = new sachi_graph{sachi::asset_to_ising(
            assets, resolution,
            star_form != 0 ? sachi::AssetForm::Star
                           : sachi::AssetForm::Complete)};
    });
}

sachi_status sachi_gen_assets_csv(const char* path, int32_t resolution,
                                  int32_t star_form, sachi_graph** out) {
    if (path == nullptr || out == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] {
        *out = new sachi_graph{sachi::asset_to_ising(
            sachi::load_assets_csv(path), resolution,
            star_form != 0 ? sachi::AssetForm::Star
                           : sachi::AssetForm::Complete)};
    });
}

namespace {

sachi::Design to_design(sachi_design design) {
    switch (design) {
        case SACHI_DESIGN_N1A: return sachi::Design::N1a;
        case SACHI_DESIGN_N1B: return sachi::Design::N1b;
        case SACHI_DESIGN_N2: return sachi::Design::N2;
        case SACHI_DESIGN_N3: return sachi::Design::N3;
        default: throw sachi::InvalidArgument("unknown design");
    }
}

sachi::EngineOptions to_options(const sachi_tile_config* tiles,
                                bool record_cycles) {
    sachi::EngineOptions options;
    if (tiles != nullptr) {
        options.tiles.tiles = tiles->tiles;
        options.tiles.rows = tiles->rows;
        options.tiles.cols = tiles->cols;
        options.tiles.tile_capacity_bits = tiles->tile_capacity_bits;
        options.tiles.refill_bits_per_cycle = tiles->refill_bits_per_cycle;
        options.storage_capacity_bytes = tiles->storage_capacity_bytes;
        options.prefetch_threshold_rows = tiles->prefetch_threshold_rows;
    }
    options.record_cycles = record_cycles;
    return options;
}

} // namespace

sachi_status sachi_analyze(const sachi_graph* graph, sachi_design design,
                           const sachi_tile_config* tiles,
                           sachi_design_figures* out) {
    if (graph == nullptr || out == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const auto figures = sachi::analyze_design(
            graph->graph, to_design(design), to_options(tiles, false));
        out->cpi = static_cast<double>(figures.cpi);
        out->reuse = figures.reuse;
        out->rounds = figures.rounds;
        out->refill_stall_cycles = figures.refill_stall_cycles;
        out->queue_peak = figures.queue_peak;
        out->storage_overflow = figures.storage_overflow ? 1 : 0;
    });
}

sachi_status sachi_solve(sachi_graph* graph, const sachi_anneal_config* cfg,
                         sachi_design design, const sachi_tile_config* tiles,
                         int32_t record_cycles, sachi_result** out) {
    if (graph == nullptr || cfg == nullptr || out == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] {
        sachi::AnnealConfig anneal;
        anneal.init_temp = cfg->init_temp > 0.0
                               ? cfg->init_temp
                               : sachi::default_init_temp(
                                     graph->graph.resolution());
        anneal.max_iterations = cfg->max_iterations;
        anneal.convergence_window = cfg->convergence_window;
        anneal.rng_seed = cfg->rng_seed;

        auto result = std::make_unique<sachi_result>();
        result->design = design;
        result->num_spins = graph->graph.num_spins();
        result->total_neighbors = graph->graph.total_degree();
        result->resolution = graph->graph.resolution();
        result->nonzero_fields = graph->graph.nonzero_field_count();

        if (design == SACHI_DESIGN_REFERENCE) {
            result->solve = sachi::solve(graph->graph, anneal);
        } else {
            sachi::ArchEngine engine(graph->graph, to_design(design),
                                     to_options(tiles, record_cycles != 0));
            result->solve = engine.solve(anneal);
            result->totals = engine.totals();
            result->iteration_totals = engine.iteration_totals();
            result->cycles = engine.first_iteration_cycles();
            result->steady_cpi = engine.steady_cpi();
            result->reuse = engine.average_reuse();
            result->rounds = engine.mapping().rounds();
            result->storage_overflow = engine.storage().overflow;
        }
        *out = result.release();
    });
}

int32_t sachi_result_converged(const sachi_result* result) {
    return result != nullptr && result->solve.converged ? 1 : 0;
}

int64_t sachi_result_iterations(const sachi_result* result) {
    return result == nullptr ? 0 : result->solve.iterations_run;
}

int64_t sachi_result_h_at(const sachi_result* result, int64_t iteration) {
    if (result == nullptr || iteration < 0 ||
        iteration >= result->solve.iterations_run) {
        return 0;
    }
    return result->solve.hamiltonian_trace[iteration];
}

int64_t sachi_result_flips_at(const sachi_result* result, int64_t iteration) {
    if (result == nullptr || iteration < 0 ||
        iteration >= result->solve.iterations_run) {
        return 0;
    }
    return result->solve.anneal_flips[iteration];
}

sachi_status sachi_result_final_spins(const sachi_result* result,
                                      int8_t* buffer, size_t capacity) {
    if (result == nullptr || buffer == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    if (capacity < result->solve.final_spins.size()) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "buffer too small");
    }
    std::memcpy(buffer, result->solve.final_spins.data(),
                result->solve.final_spins.size());
    return SACHI_OK;
}

double sachi_result_cpi(const sachi_result* result) {
    return result == nullptr ? 0.0 : static_cast<double>(result->steady_cpi);
}

double sachi_result_reuse(const sachi_result* result) {
    return result == nullptr ? 0.0 : result->reuse;
}

int32_t sachi_result_rounds(const sachi_result* result) {
    return result == nullptr ? 0 : result->rounds;
}

uint64_t sachi_result_prefetches(const sachi_result* result) {
    return result == nullptr ? 0 : result->totals.prefetch_requests;
}

int32_t sachi_result_storage_overflow(const sachi_result* result) {
    return result != nullptr && result->storage_overflow ? 1 : 0;
}

sachi_status sachi_result_cost(const sachi_result* result,
                               const sachi_tech_params* tech,
                               int32_t include_loading,
                               sachi_cost_report* out) {
    if (result == nullptr || out == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const sachi::TechParams params = to_tech(tech);
        const auto loading = sachi::loading_cost_from_stats(
            result->num_spins, result->total_neighbors, result->resolution,
            result->nonzero_fields, params);
        *out = to_report(sachi::sachi_cost(result->totals, params, loading,
                                           include_loading != 0));
    });
}

sachi_status sachi_result_iteration_cost(const sachi_result* result,
                                         const sachi_tech_params* tech,
                                         int64_t iteration, uint64_t* cycles,
                                         double* energy_j) {
    if (result == nullptr || cycles == nullptr || energy_j == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    if (result->design == SACHI_DESIGN_REFERENCE) {
        *cycles = 0;
        *energy_j = 0.0;
        return SACHI_OK;
    }
    if (iteration < 0 ||
        iteration >= static_cast<int64_t>(result->iteration_totals.size())) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "iteration out of range");
    }
    return guarded([&] {
        const sachi::TechParams params = to_tech(tech);
        const auto report =
            sachi::sachi_cost(result->iteration_totals[iteration], params,
                              sachi::LoadingCost{}, false);
        *cycles = report.cycles;
        *energy_j = report.total_energy;
    });
}

sachi_status sachi_result_summary_json(const sachi_result* result,
                                       const sachi_tech_params* tech,
                                       int32_t include_loading, char** out) {
    if (result == nullptr || out == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] {
        nlohmann::ordered_json j;
        const char* names[] = {"reference", "n1a", "n1b", "n2", "n3"};
        j["design"] = names[result->design];
        j["converged"] = result->solve.converged;
        j["iterations"] = result->solve.iterations_run;
        j["final_h"] = result->solve.hamiltonian_trace.empty()
                           ? 0
                           : result->solve.hamiltonian_trace.back();
        if (result->design != SACHI_DESIGN_REFERENCE) {
            const sachi::TechParams params = to_tech(tech);
            const auto loading = sachi::loading_cost_from_stats(
                result->num_spins, result->total_neighbors, result->resolution,
                result->nonzero_fields, params);
            const auto cost = sachi::sachi_cost(result->totals, params, loading,
                                                include_loading != 0);
            j["cpi"] = result->steady_cpi;
            j["reuse"] = result->reuse;
            j["xnor_ops"] = result->totals.xnor_ops;
            j["redundant_ops"] = result->totals.redundant_computes;
            j["rounds"] = result->rounds;
            j["prefetches"] = result->totals.prefetch_requests;
            j["queue_peak"] = result->totals.queue_peak;
            j["storage_overflow"] = result->storage_overflow;
            j["cycles_total"] = cost.cycles;
            j["time_s"] = cost.execution_time;
            j["energy_j"] = {{"rwl", cost.breakdown.rwl},
                             {"rbl", cost.breakdown.rbl},
                             {"movement", cost.breakdown.movement},
                             {"logic", cost.breakdown.logic},
                             {"loading", cost.breakdown.loading},
                             {"total", cost.total_energy}};
            j["average_power_w"] = cost.average_power;
        }
        const std::string text = j.dump(2);
        char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
        if (buffer == nullptr) throw std::bad_alloc();
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *out = buffer;
    });
}

sachi_status sachi_result_trace_csv(const sachi_result* result,
                                    const char* path) {
    if (result == nullptr || path == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    if (result->cycles.empty()) {
        return fail(SACHI_ERR_INVALID_ARGUMENT,
                    "no per-cycle trace: solve with record_cycles");
    }
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw sachi::IoError(std::string("cannot write ") + path);
        out << "cycle,tile,phase_mask,rwl_count,col_enables,queue_occ\n";
        for (const auto& rec : result->cycles) {
            out << rec.cycle << ',' << rec.tile << ','
                << static_cast<int>(rec.phase_mask) << ',' << rec.rwl_count
                << ',' << rec.col_enables << ',' << rec.queue_occ << '\n';
        }
        if (!out) throw sachi::IoError(std::string("write failed: ") + path);
    });
}

void sachi_result_free(sachi_result* result) { delete result; }

void sachi_string_free(char* text) { std::free(text); }

sachi_status sachi_brim_cost(const sachi_graph* graph, int64_t iterations,
                             int32_t worst_case, const sachi_tech_params* tech,
                             int32_t include_loading, sachi_cost_report* out) {
    if (graph == nullptr || out == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const auto stats = sachi::graph_stats(graph->graph);
        *out = to_report(sachi::brim_cost(
            stats, iterations, sachi::BaselineParams{}, to_tech(tech),
            worst_case != 0 ? sachi::BrimMode::Worst : sachi::BrimMode::Best,
            include_loading != 0));
    });
}

sachi_status sachi_isingcim_cost(const sachi_graph* graph, int64_t iterations,
                                 const sachi_tech_params* tech,
                                 int32_t include_loading,
                                 sachi_cost_report* out) {
    if (graph == nullptr || out == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        *out = to_report(sachi::isingcim_cost(graph->graph, iterations,
                                              to_tech(tech),
                                              sachi::BaselineParams{},
                                              include_loading != 0));
    });
}

sachi_status sachi_loading_cost(const sachi_graph* graph,
                                const sachi_tech_params* tech, uint64_t* cycles,
                                double* energy_j) {
    if (graph == nullptr || cycles == nullptr || energy_j == nullptr) {
        return fail(SACHI_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const auto loading = sachi::loading_cost(graph->graph, to_tech(tech));
        *cycles = loading.cycles;
        *energy_j = loading.energy;
    });
}

} // extern "C"
