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

// Batch experiment driver on top of the C API: solve single instances,
// sweep (spins x resolution x design), compare against the analytic
// baselines, and emit graph files. All outputs are deterministic for a
// fixed configuration and seed.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sachi.h"

namespace {

constexpr int64_t kDeskScaleSpinCap = 100000;

struct CommonOptions {
    std::string benchmark = "molecular";
    std::string graph_path;
    std::string pgm_path;
    std::string csv_path;
    int64_t spins = 100;
    int32_t resolution = 4;
    std::string design = "n3";
    uint64_t seed = 1;
    int64_t iters = 1000;
    double init_temp = 0.0;
    int64_t window = 10;
    std::string out_dir = ".";
    bool with_loading = true;
    int32_t tiles = 16;
    int32_t tile_rows = 100;
    double cycle_ns = 5.0;
    int32_t connectivity = 4;
    std::string asset_form = "complete";
    bool even_split = false;
    bool force_full = false;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--benchmark", opt.benchmark,
                    "assets|image|tsp|molecular|file")
        ->check(CLI::IsMember({"assets", "image", "tsp", "molecular", "file"}));
    cmd->add_option("--graph", opt.graph_path, "graph file (benchmark=file)");
    cmd->add_option("--pgm", opt.pgm_path, "PGM image input (benchmark=image)");
    cmd->add_option("--csv", opt.csv_path,
                    "CSV input: asset values or TSP distance matrix");
    cmd->add_option("--spins", opt.spins, "problem size in spins");
    cmd->add_option("--r", opt.resolution, "coefficient resolution in bits");
    cmd->add_option("--design", opt.design, "n1a|n1b|n2|n3|reference")
        ->check(CLI::IsMember({"n1a", "n1b", "n2", "n3", "reference"}));
    cmd->add_option("--seed", opt.seed, "rng seed");
    cmd->add_option("--iters", opt.iters, "max iterations");
    cmd->add_option("--init-temp", opt.init_temp,
                    "initial temperature (<=0: default 2^R)");
    cmd->add_option("--window", opt.window, "convergence window");
    cmd->add_option("--out-dir", opt.out_dir, "output directory");
    cmd->add_flag("--with-loading,!--no-loading", opt.with_loading,
                  "include the one-time DRAM loading in reports");
    cmd->add_option("--tiles", opt.tiles, "compute tiles");
    cmd->add_option("--tile-rows", opt.tile_rows, "data rows per tile");
    cmd->add_option("--cycle-ns", opt.cycle_ns, "cycle time in ns");
    cmd->add_option("--connectivity", opt.connectivity, "image grid: 4 or 8")
        ->check(CLI::IsMember({4, 8}));
    cmd->add_option("--asset-form", opt.asset_form,
                    "complete|star asset coupling")
        ->check(CLI::IsMember({"complete", "star"}));
    cmd->add_flag("--even-split", opt.even_split,
                  "force a perfect partition to exist (assets)");
    cmd->add_flag("--force-full", opt.force_full,
                  "simulate beyond the desk-scale spin cap");
}

[[noreturn]] void die(const std::string& message) {
    std::fprintf(stderr, "error: %s\n", message.c_str());
    std::exit(1);
}

void check(sachi_status status, const std::string& what) {
    if (status != SACHI_OK) {
        die(what + ": " + sachi_status_name(status) + " (" +
            sachi_last_error() + ")");
    }
}

sachi_tech_params make_tech(const CommonOptions& opt) {
    sachi_tech_params tech;
    sachi_tech_params_init(&tech);
    tech.cycle_time_s = opt.cycle_ns * 1e-9;
    return tech;
}

sachi_tile_config make_tiles(const CommonOptions& opt,
                             const sachi_tech_params& tech) {
    sachi_tile_config tiles;
    sachi_tile_config_init(&tiles);
    tiles.tiles = opt.tiles;
    tiles.rows = opt.tile_rows;
    tiles.prefetch_threshold_rows = static_cast<uint64_t>(
        std::ceil((tech.dram_latency_s + tech.storage_to_compute_latency_s) /
                  tech.cycle_time_s));
    return tiles;
}

// Near-square lattice factorization for grid benchmarks.
void lattice_dims(int64_t spins, int32_t* rows, int32_t* cols) {
    auto r = static_cast<int32_t>(std::sqrt(static_cast<double>(spins)));
    while (r > 1 && spins % r != 0) --r;
    *rows = std::max(r, 1);
    *cols = static_cast<int32_t>(spins / *rows);
}

sachi_graph* build_graph(const CommonOptions& opt) {
    sachi_graph* graph = nullptr;
    if (opt.benchmark == "file") {
        if (opt.graph_path.empty()) die("benchmark=file needs --graph");
        check(sachi_graph_load(opt.graph_path.c_str(), &graph), "load graph");
        return graph;
    }
    if (opt.benchmark == "assets") {
        const int32_t star = opt.asset_form == "star" ? 1 : 0;
        if (!opt.csv_path.empty()) {
            check(sachi_gen_assets_csv(opt.csv_path.c_str(), opt.resolution,
                                       star, &graph),
                  "assets from csv");
        } else {
            check(sachi_gen_assets(opt.spins, opt.resolution, opt.seed, star,
                                   opt.even_split ? 1 : 0, &graph),
                  "generate assets");
        }
        return graph;
    }
    if (opt.benchmark == "image") {
        if (!opt.pgm_path.empty()) {
            check(sachi_gen_image_pgm(opt.pgm_path.c_str(), opt.resolution,
                                      opt.connectivity, &graph),
                  "image from pgm");
        } else {
            int32_t rows = 0, cols = 0;
            lattice_dims(opt.spins, &rows, &cols);
            check(sachi_gen_image(cols, rows, opt.resolution, opt.connectivity,
                                  opt.seed, &graph),
                  "generate image");
        }
        return graph;
    }
    if (opt.benchmark == "tsp") {
        if (!opt.csv_path.empty()) {
            check(sachi_gen_tsp_csv(opt.csv_path.c_str(), opt.resolution,
                                    &graph),
                  "tsp from csv");
        } else {
            check(sachi_gen_tsp(static_cast<int32_t>(opt.spins), opt.resolution,
                                opt.seed, &graph),
                  "generate tsp");
        }
        return graph;
    }
    // molecular
    int32_t rows = 0, cols = 0;
    lattice_dims(opt.spins, &rows, &cols);
    check(sachi_gen_molecular(rows, cols, opt.resolution, opt.seed, &graph),
          "generate molecular");
    return graph;
}

sachi_design design_code(const std::string& name) {
    if (name == "reference") return SACHI_DESIGN_REFERENCE;
    if (name == "n1a") return SACHI_DESIGN_N1A;
    if (name == "n1b") return SACHI_DESIGN_N1B;
    if (name == "n2") return SACHI_DESIGN_N2;
    return SACHI_DESIGN_N3;
}

sachi_anneal_config make_anneal(const CommonOptions& opt) {
    sachi_anneal_config cfg;
    sachi_anneal_config_init(&cfg, opt.resolution);
    cfg.init_temp = opt.init_temp; // <= 0 selects the default in the library
    cfg.max_iterations = opt.iters;
    cfg.convergence_window = opt.window;
    cfg.rng_seed = opt.seed;
    return cfg;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<int64_t> parse_list(const std::string& csv) {
    std::vector<int64_t> out;
    std::string token;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!token.empty()) out.push_back(std::stoll(token));
            token.clear();
        } else {
            token += c;
        }
    }
    return out;
}

void validate_common(const CommonOptions& opt) {
    if (opt.resolution < 2 || opt.resolution > 32) {
        die("--r must be in [2, 32]");
    }
    if (opt.spins < 1) die("--spins must be positive");
    if (opt.iters < 1) die("--iters must be positive");
    if (opt.window < 1) die("--window must be positive");
    if (opt.cycle_ns <= 0) die("--cycle-ns must be positive");
    if (opt.tiles < 1 || opt.tile_rows < 1) {
        die("--tiles/--tile-rows must be positive");
    }
}

// ---- solve -----------------------------------------------------------------

int cmd_solve(const CommonOptions& opt, bool trace_csv) {
    validate_common(opt);
    sachi_graph* graph = build_graph(opt);
    const sachi_tech_params tech = make_tech(opt);
    const sachi_tile_config tiles = make_tiles(opt, tech);
    const sachi_anneal_config cfg = make_anneal(opt);
    const sachi_design design = design_code(opt.design);

    const int64_t spins = sachi_graph_num_spins(graph);
    if (design != SACHI_DESIGN_REFERENCE && spins > kDeskScaleSpinCap &&
        !opt.force_full) {
        die("problem exceeds the desk-scale cap of 100000 spins for full "
            "simulation; use sweep for analytic figures or --force-full");
    }

    sachi_result* result = nullptr;
    check(sachi_solve(graph, &cfg, design, &tiles, trace_csv ? 1 : 0, &result),
          "solve");

    namespace fs = std::filesystem;
    fs::create_directories(opt.out_dir);

    {
        std::ofstream csv(fs::path(opt.out_dir) / "iterations.csv",
                          std::ios::binary);
        if (!csv) die("cannot write iterations.csv");
        csv << "iteration,h,flips,cpi,cumulative_energy_j\n";
        double cumulative = 0.0;
        for (int64_t k = 0; k < sachi_result_iterations(result); ++k) {
            uint64_t cycles = 0;
            double energy = 0.0;
            check(sachi_result_iteration_cost(result, &tech, k, &cycles,
                                              &energy),
                  "iteration cost");
            cumulative += energy;
            csv << (k + 1) << ',' << sachi_result_h_at(result, k) << ','
                << sachi_result_flips_at(result, k) << ',' << cycles << ','
                << format_double(cumulative) << '\n';
        }
    }
    {
        char* json = nullptr;
        check(sachi_result_summary_json(result, &tech,
                                        opt.with_loading ? 1 : 0, &json),
              "summary");
        std::ofstream out(fs::path(opt.out_dir) / "summary.json",
                          std::ios::binary);
        if (!out) die("cannot write summary.json");
        out << json << '\n';
        sachi_string_free(json);
    }
    if (trace_csv) {
        const std::string path =
            (fs::path(opt.out_dir) / "trace.csv").string();
        check(sachi_result_trace_csv(result, path.c_str()), "trace csv");
    }

    const bool converged = sachi_result_converged(result) != 0;
    std::printf("design=%s spins=%" PRId64 " iterations=%" PRId64
                " converged=%s final_h=%" PRId64 "\n",
                opt.design.c_str(), spins, sachi_result_iterations(result),
                converged ? "true" : "false",
                sachi_result_h_at(result,
                                  sachi_result_iterations(result) - 1));
    sachi_result_free(result);
    sachi_graph_free(graph);
    return converged ? 0 : 2;
}

// ---- sweep -----------------------------------------------------------------

int cmd_sweep(const CommonOptions& base, const std::string& spins_list,
              const std::string& r_list, const std::string& designs_list) {
    const std::vector<int64_t> spin_counts = parse_list(spins_list);
    const std::vector<int64_t> resolutions = parse_list(r_list);
    std::vector<std::string> designs;
    {
        std::string token;
        for (char c : designs_list + ",") {
            if (c == ',') {
                if (!token.empty()) designs.push_back(token);
                token.clear();
            } else {
                token += c;
            }
        }
    }
    if (spin_counts.empty() || resolutions.empty() || designs.empty()) {
        die("sweep needs --spins-list, --r-list and --designs");
    }

    namespace fs = std::filesystem;
    fs::create_directories(base.out_dir);
    std::ofstream csv(fs::path(base.out_dir) / "sweep.csv", std::ios::binary);
    if (!csv) die("cannot write sweep.csv");
    csv << "design,benchmark,spins,r,cpi,reuse,energy_j,iterations,time_s,"
           "status\n";

    for (int64_t spins : spin_counts) {
        for (int64_t r : resolutions) {
            for (const std::string& design : designs) {
                CommonOptions opt = base;
                opt.spins = spins;
                opt.resolution = static_cast<int32_t>(r);
                opt.design = design;
                csv << design << ',' << opt.benchmark << ',' << spins << ','
                    << r << ',';
                if (r < 2 || r > 32 || spins < 1) {
                    csv << ",,,,,error:bad parameters\n";
                    continue;
                }
                sachi_graph* graph = build_graph(opt);
                const sachi_tech_params tech = make_tech(opt);
                const sachi_tile_config tiles = make_tiles(opt, tech);
                const sachi_design code = design_code(design);

                if (code != SACHI_DESIGN_REFERENCE &&
                    spins > kDeskScaleSpinCap && !opt.force_full) {
                    sachi_design_figures figures;
                    if (sachi_analyze(graph, code, &tiles, &figures) !=
                        SACHI_OK) {
                        csv << ",,,,,error:" << sachi_last_error() << '\n';
                    } else {
                        csv << format_double(figures.cpi) << ','
                            << format_double(figures.reuse)
                            << ",,,,analytic\n";
                    }
                    sachi_graph_free(graph);
                    continue;
                }

                sachi_result* result = nullptr;
                const sachi_anneal_config cfg = make_anneal(opt);
                if (sachi_solve(graph, &cfg, code, &tiles, 0, &result) !=
                    SACHI_OK) {
                    csv << ",,,,,error:" << sachi_last_error() << '\n';
                    sachi_graph_free(graph);
                    continue;
                }
                if (code == SACHI_DESIGN_REFERENCE) {
                    csv << ",,," << sachi_result_iterations(result)
                        << ",,ok\n";
                } else {
                    sachi_cost_report report;
                    check(sachi_result_cost(result, &tech,
                                            base.with_loading ? 1 : 0,
                                            &report),
                          "cost");
                    csv << format_double(sachi_result_cpi(result)) << ','
                        << format_double(sachi_result_reuse(result)) << ','
                        << format_double(report.total_j) << ','
                        << sachi_result_iterations(result) << ','
                        << format_double(report.execution_time_s) << ",ok\n";
                }
                sachi_result_free(result);
                sachi_graph_free(graph);
            }
        }
    }
    std::printf("sweep written to %s/sweep.csv\n", base.out_dir.c_str());
    return 0;
}

// ---- compare ---------------------------------------------------------------

int cmd_compare(const CommonOptions& base) {
    validate_common(base);
    namespace fs = std::filesystem;
    fs::create_directories(base.out_dir);
    std::ofstream csv(fs::path(base.out_dir) / "compare.csv", std::ios::binary);
    if (!csv) die("cannot write compare.csv");
    csv << "engine,applicable,iterations,cycles,time_s,energy_j,"
           "cycles_with_loading,time_with_loading_s,energy_with_loading_j,"
           "speedup_vs_brim_best,energy_ratio_vs_brim_best\n";

    struct Row {
        std::string name;
        bool applicable = true;
        int64_t iterations = 0;
        sachi_cost_report bare{};
        sachi_cost_report loaded{};
    };
    std::vector<Row> rows;

    const sachi_tech_params tech = make_tech(base);
    const sachi_tile_config tiles = make_tiles(base, tech);
    int64_t iterations = 0;

    for (const char* design : {"n1a", "n1b", "n2", "n3"}) {
        CommonOptions opt = base;
        opt.design = design;
        sachi_graph* graph = build_graph(opt);
        sachi_result* result = nullptr;
        const sachi_anneal_config cfg = make_anneal(opt);
        check(sachi_solve(graph, &cfg, design_code(design), &tiles, 0, &result),
              std::string("solve ") + design);
        Row row;
        row.name = design;
        row.iterations = sachi_result_iterations(result);
        check(sachi_result_cost(result, &tech, 0, &row.bare), "cost");
        check(sachi_result_cost(result, &tech, 1, &row.loaded), "cost");
        iterations = row.iterations;
        rows.push_back(row);
        sachi_result_free(result);
        sachi_graph_free(graph);
    }

    // Baselines at the same iteration count (all engines share the trace).
    sachi_graph* graph = build_graph(base);
    for (int worst = 0; worst <= 1; ++worst) {
        Row row;
        row.name = worst ? "brim-worst" : "brim-best";
        row.iterations = iterations;
        check(sachi_brim_cost(graph, iterations, worst, &tech, 0, &row.bare),
              "brim");
        check(sachi_brim_cost(graph, iterations, worst, &tech, 1, &row.loaded),
              "brim");
        rows.push_back(row);
    }
    {
        Row row;
        row.name = "ising-cim";
        row.iterations = iterations;
        const sachi_status status =
            sachi_isingcim_cost(graph, iterations, &tech, 0, &row.bare);
        if (status == SACHI_OK) {
            check(sachi_isingcim_cost(graph, iterations, &tech, 1,
                                      &row.loaded),
                  "ising-cim");
        } else if (status == SACHI_ERR_UNSUPPORTED) {
            row.applicable = false;
        } else {
            check(status, "ising-cim");
        }
        rows.push_back(row);
    }
    sachi_graph_free(graph);

    const Row* brim_best = nullptr;
    for (const auto& row : rows) {
        if (row.name == "brim-best") brim_best = &row;
    }
    for (const auto& row : rows) {
        csv << row.name << ',';
        if (!row.applicable) {
            csv << "no,,,,,,,,N/A,N/A\n";
            continue;
        }
        csv << "yes," << row.iterations << ',' << row.bare.cycles << ','
            << format_double(row.bare.execution_time_s) << ','
            << format_double(row.bare.total_j) << ',' << row.loaded.cycles
            << ',' << format_double(row.loaded.execution_time_s) << ','
            << format_double(row.loaded.total_j) << ',';
        if (brim_best != nullptr && row.loaded.execution_time_s > 0.0) {
            csv << format_double(brim_best->loaded.execution_time_s /
                                 row.loaded.execution_time_s)
                << ','
                << format_double(brim_best->loaded.total_j /
                                 row.loaded.total_j)
                << '\n';
        } else {
            csv << "N/A,N/A\n";
        }
    }
    std::printf("comparison written to %s/compare.csv\n",
                base.out_dir.c_str());
    return 0;
}

// ---- gen -------------------------------------------------------------------

int cmd_gen(const CommonOptions& opt, const std::string& out_file) {
    validate_common(opt);
    if (out_file.empty()) die("gen needs --out");
    sachi_graph* graph = build_graph(opt);
    check(sachi_graph_save(graph, out_file.c_str()), "save graph");
    std::printf("wrote %s (%" PRId64 " spins, %" PRId64 " edges)\n",
                out_file.c_str(), sachi_graph_num_spins(graph),
                sachi_graph_num_edges(graph));
    sachi_graph_free(graph);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SACHI near-memory Ising machine simulator"};
    app.require_subcommand(1);
    app.set_config("--config");

    CommonOptions solve_opt;
    bool solve_trace = false;
    CLI::App* solve_cmd =
        app.add_subcommand("solve", "solve one instance and emit traces");
    add_common_flags(solve_cmd, solve_opt);
    solve_cmd->add_flag("--trace", solve_trace,
                        "write the per-cycle trace of the first iteration");

    CommonOptions sweep_opt;
    std::string spins_list = "100,1000";
    std::string r_list = "2,4,8";
    std::string designs_list = "n1a,n1b,n2,n3";
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "cartesian sweep over spins x R x design");
    add_common_flags(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--spins-list", spins_list, "comma list of sizes");
    sweep_cmd->add_option("--r-list", r_list, "comma list of resolutions");
    sweep_cmd->add_option("--designs", designs_list, "comma list of designs");

    CommonOptions compare_opt;
    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "SACHI designs vs the BRIM and Ising-CIM baselines");
    add_common_flags(compare_cmd, compare_opt);

    CommonOptions gen_opt;
    std::string gen_out;
    CLI::App* gen_cmd =
        app.add_subcommand("gen", "emit a benchmark graph file");
    add_common_flags(gen_cmd, gen_opt);
    gen_cmd->add_option("--out", gen_out, "output graph file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help and friends
        }
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(solve_opt, solve_trace);
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep_opt, spins_list, r_list, designs_list);
        }
        if (compare_cmd->parsed()) return cmd_compare(compare_opt);
        if (gen_cmd->parsed()) return cmd_gen(gen_opt, gen_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
