/* Copyright 2026 The sachi-sim developers
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

/* C interface to the SACHI near-memory Ising machine simulator.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions returning sachi_status set a thread-local error message
 * retrievable with sachi_last_error() on failure. Handles may be used from
 * multiple threads only with external synchronization; distinct handles are
 * independent.
 */

#ifndef SACHI_H
#define SACHI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SACHI_API __declspec(dllexport)
#else
#define SACHI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sachi_status {
    SACHI_OK = 0,
    SACHI_ERR_INVALID_ARGUMENT = 1,
    SACHI_ERR_IO = 2,
    SACHI_ERR_CAPACITY = 3,
    SACHI_ERR_UNSUPPORTED = 4,
    SACHI_ERR_INTERNAL = 5
} sachi_status;

/* REFERENCE runs the functional solver with no architectural model; the
 * others are the four data-stationarity designs. */
typedef enum sachi_design {
    SACHI_DESIGN_REFERENCE = 0,
    SACHI_DESIGN_N1A = 1,
    SACHI_DESIGN_N1B = 2,
    SACHI_DESIGN_N2 = 3,
    SACHI_DESIGN_N3 = 4
} sachi_design;

typedef struct sachi_graph sachi_graph;
typedef struct sachi_result sachi_result;

typedef struct sachi_anneal_config {
    double init_temp; /* <= 0 selects the default 2^R */
    int64_t max_iterations;
    int64_t convergence_window;
    uint64_t rng_seed;
} sachi_anneal_config;

typedef struct sachi_tech_params {
    double cycle_time_s;
    double vdd_v;
    double c_rwl_f;
    double c_rbl_f;
    double sram_compute_latency_s;
    double movement_energy_j_per_bit;
    double storage_to_compute_latency_s;
    double dram_bytes_per_cycle;
    double dram_latency_s;
    double logic_energy_j_per_bit_op;
} sachi_tech_params;

typedef struct sachi_tile_config {
    int32_t tiles;
    int32_t rows;
    int32_t cols;
    uint64_t tile_capacity_bits;
    int64_t refill_bits_per_cycle;
    uint64_t storage_capacity_bytes;
    uint64_t prefetch_threshold_rows;
} sachi_tile_config;

typedef struct sachi_cost_report {
    uint64_t cycles;
    double execution_time_s;
    double rwl_j;
    double rbl_j;
    double movement_j;
    double logic_j;
    double loading_j;
    double total_j;
    double average_power_w;
} sachi_cost_report;

/* Error text for the last failing call on the calling thread. */
SACHI_API const char* sachi_last_error(void);
SACHI_API const char* sachi_status_name(sachi_status status);

/* Fill structs with the published defaults. */
SACHI_API void sachi_anneal_config_init(sachi_anneal_config* cfg,
                                        int32_t resolution);
SACHI_API void sachi_tech_params_init(sachi_tech_params* tech);
SACHI_API void sachi_tile_config_init(sachi_tile_config* tiles);

/* ---- Graphs ------------------------------------------------------------ */

SACHI_API sachi_status sachi_graph_create(int64_t num_spins, int32_t resolution,
                                          sachi_graph** out);
SACHI_API sachi_status sachi_graph_add_edge(sachi_graph* graph, int64_t i,
                                            int64_t j, int64_t weight);
SACHI_API sachi_status sachi_graph_set_field(sachi_graph* graph, int64_t i,
                                             int64_t value);
SACHI_API sachi_status sachi_graph_load(const char* path, sachi_graph** out);
SACHI_API sachi_status sachi_graph_save(const sachi_graph* graph,
                                        const char* path);
SACHI_API int64_t sachi_graph_num_spins(const sachi_graph* graph);
SACHI_API int32_t sachi_graph_resolution(const sachi_graph* graph);
SACHI_API int64_t sachi_graph_num_edges(const sachi_graph* graph);
SACHI_API sachi_status sachi_graph_hamiltonian(const sachi_graph* graph,
                                               int64_t* out);
SACHI_API void sachi_graph_free(sachi_graph* graph);

/* ---- Benchmark generators ---------------------------------------------- */

SACHI_API sachi_status sachi_gen_molecular(int32_t rows, int32_t cols,
                                           int32_t resolution, uint64_t seed,
                                           sachi_graph** out);
SACHI_API sachi_status sachi_gen_image(int32_t width, int32_t height,
                                       int32_t resolution, int32_t connectivity,
                                       uint64_t seed, sachi_graph** out);
SACHI_API sachi_status sachi_gen_image_pgm(const char* path, int32_t resolution,
                                           int32_t connectivity,
                                           sachi_graph** out);
SACHI_API sachi_status sachi_gen_tsp(int32_t cities, int32_t resolution,
                                     uint64_t seed, sachi_graph** out);
SACHI_API sachi_status sachi_gen_tsp_csv(const char* path, int32_t resolution,
                                         sachi_graph** out);
/* star_form != 0 selects the sparse hub shape instead of the complete
 * number-partitioning coupling. */
SACHI_API sachi_status sachi_gen_assets(int64_t count, int32_t resolution,
                                        uint64_t seed, int32_t star_form,
                                        int32_t force_even_split,
                                        sachi_graph** out);
SACHI_API sachi_status sachi_gen_assets_csv(const char* path,
                                            int32_t resolution,
                                            int32_t star_form,
                                            sachi_graph** out);

/* ---- Analysis ------------------------------------------------------------ */

typedef struct sachi_design_figures {
    double cpi;
    double reuse;
    int32_t rounds;
    uint64_t refill_stall_cycles;
    uint64_t queue_peak;
    int32_t storage_overflow;
} sachi_design_figures;

/* Mapping-derived timing/reuse figures without running the solver: exact
 * cycles-per-iteration, average reuse, rounds. Used to extrapolate problems
 * too large to simulate in full. */
SACHI_API sachi_status sachi_analyze(const sachi_graph* graph,
                                     sachi_design design,
                                     const sachi_tile_config* tiles,
                                     sachi_design_figures* out);

/* ---- Solving ------------------------------------------------------------ */

/* Runs the solver on the graph (initial spins are drawn from the seed) and
 * leaves the graph's spins at the final state. tiles may be NULL for the
 * default configuration; it is ignored for SACHI_DESIGN_REFERENCE.
 * record_cycles != 0 keeps the per-cycle trace of the first iteration. */
SACHI_API sachi_status sachi_solve(sachi_graph* graph,
                                   const sachi_anneal_config* cfg,
                                   sachi_design design,
                                   const sachi_tile_config* tiles,
                                   int32_t record_cycles, sachi_result** out);

/* ---- Results ------------------------------------------------------------ */

SACHI_API int32_t sachi_result_converged(const sachi_result* result);
SACHI_API int64_t sachi_result_iterations(const sachi_result* result);
/* iteration is 0-based; aborts on a bad index via status in the _checked
 * variants below. */
SACHI_API int64_t sachi_result_h_at(const sachi_result* result,
                                    int64_t iteration);
SACHI_API int64_t sachi_result_flips_at(const sachi_result* result,
                                        int64_t iteration);
SACHI_API sachi_status sachi_result_final_spins(const sachi_result* result,
                                                int8_t* buffer,
                                                size_t capacity);
/* Architectural figures; zero for reference runs. */
SACHI_API double sachi_result_cpi(const sachi_result* result);
SACHI_API double sachi_result_reuse(const sachi_result* result);
SACHI_API int32_t sachi_result_rounds(const sachi_result* result);
SACHI_API uint64_t sachi_result_prefetches(const sachi_result* result);
SACHI_API int32_t sachi_result_storage_overflow(const sachi_result* result);

/* Whole-run cost. tech may be NULL for defaults. */
SACHI_API sachi_status sachi_result_cost(const sachi_result* result,
                                         const sachi_tech_params* tech,
                                         int32_t include_loading,
                                         sachi_cost_report* out);
/* Cycles and energy of one iteration (0-based). */
SACHI_API sachi_status sachi_result_iteration_cost(const sachi_result* result,
                                                   const sachi_tech_params* tech,
                                                   int64_t iteration,
                                                   uint64_t* cycles,
                                                   double* energy_j);
/* Run summary as a JSON object; free with sachi_string_free. */
SACHI_API sachi_status sachi_result_summary_json(const sachi_result* result,
                                                 const sachi_tech_params* tech,
                                                 int32_t include_loading,
                                                 char** out);
/* Per-cycle trace CSV (cycle, tile, phase_mask, rwl_count, col_enables,
 * queue_occ); needs record_cycles at solve time. */
SACHI_API sachi_status sachi_result_trace_csv(const sachi_result* result,
                                              const char* path);
SACHI_API void sachi_result_free(sachi_result* result);
SACHI_API void sachi_string_free(char* text);

/* ---- Baselines and loading ---------------------------------------------- */

SACHI_API sachi_status sachi_brim_cost(const sachi_graph* graph,
                                       int64_t iterations, int32_t worst_case,
                                       const sachi_tech_params* tech,
                                       int32_t include_loading,
                                       sachi_cost_report* out);
/* SACHI_ERR_UNSUPPORTED outside King's graphs or above 2-bit coefficients. */
SACHI_API sachi_status sachi_isingcim_cost(const sachi_graph* graph,
                                           int64_t iterations,
                                           const sachi_tech_params* tech,
                                           int32_t include_loading,
                                           sachi_cost_report* out);
SACHI_API sachi_status sachi_loading_cost(const sachi_graph* graph,
                                          const sachi_tech_params* tech,
                                          uint64_t* cycles, double* energy_j);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SACHI_H */
