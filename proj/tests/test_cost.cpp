#include <cmath>

#include "doctest.h"
#include "sachi/cost.hpp"
#include "sachi/engine.hpp"
#include "sachi/errors.hpp"
#include "sachi/workloads.hpp"

using namespace sachi;

namespace {

CostReport run_design_cost(Design d, const IsingGraph& proto, int64_t iters,
                           bool with_loading) {
    IsingGraph g = proto; // engines mutate spins
    ArchEngine engine(g, d);
    AnnealConfig cfg = default_anneal_config(g.resolution());
    cfg.max_iterations = iters;
    cfg.convergence_window = 1 << 20; // fixed-length run for comparability
    engine.solve(cfg);
    const TechParams tech;
    return sachi_cost(engine.totals(), tech, loading_cost(g, tech), with_loading);
}

} // namespace

TEST_CASE("single switching events at the published capacitances") {
    const TechParams tech;
    TraceTotals t;
    t.rwl_activations = 1;
    const LoadingCost no_load;
    CHECK(sachi_cost(t, tech, no_load, false).breakdown.rwl ==
          doctest::Approx(50e-15)); // C*V^2

    TraceTotals u;
    u.rbl_discharges = 1;
    CHECK(sachi_cost(u, tech, no_load, false).breakdown.rbl ==
          doctest::Approx(35e-15));
}

TEST_CASE("zero-compute trace costs loading only") {
    const TechParams tech;
    const IsingGraph g = kings_graph(5, 5, 4, 1);
    const LoadingCost loading = loading_cost(g, tech);
    const CostReport report = sachi_cost(TraceTotals{}, tech, loading, true);
    CHECK(report.breakdown.rwl == 0.0);
    CHECK(report.breakdown.movement == 0.0);
    CHECK(report.total_energy == doctest::Approx(loading.energy));
}

TEST_CASE("breakdown sums to the total and is non-negative") {
    IsingGraph g = gen_molecular(6, 6, 4, 5);
    ArchEngine engine(g, Design::N1a);
    AnnealConfig cfg = default_anneal_config(4);
    cfg.max_iterations = 8;
    engine.solve(cfg);
    const TechParams tech;
    const CostReport r =
        sachi_cost(engine.totals(), tech, loading_cost(g, tech), true);
    const auto& b = r.breakdown;
    for (double v : {b.rwl, b.rbl, b.movement, b.logic, b.loading}) {
        CHECK(v >= 0.0);
    }
    CHECK(r.total_energy ==
          doctest::Approx(b.rwl + b.rbl + b.movement + b.logic + b.loading));
    CHECK(r.execution_time ==
          doctest::Approx(static_cast<double>(r.cycles) * tech.cycle_time));
}

TEST_CASE("loading: 100-spin King's lattice at R=8 takes 13 cycles") {
    const TechParams tech;
    const IsingGraph g = kings_graph(10, 10, 8, 1);
    const LoadingCost l = loading_cost(g, tech);
    CHECK(l.bits == 684 * 9); // 684 neighbour entries, 9 bits each
    CHECK(l.cycles == 13);    // ceil(770 bytes / 64 per cycle)
    CHECK(l.energy == doctest::Approx(684 * 9 * 1e-12));
    CHECK_FALSE(l.storage_overflow);
}

TEST_CASE("loading: empty graph costs nothing") {
    const TechParams tech;
    const IsingGraph g(4, 4);
    const LoadingCost l = loading_cost(g, tech);
    CHECK(l.cycles == 0);
    CHECK(l.energy == 0.0);
}

TEST_CASE("loading: 1M-spin complete graph, arithmetic only") {
    const TechParams tech;
    const int64_t spins = 1000000;
    const int64_t total_neighbors = spins * (spins - 1);
    const LoadingCost l = loading_cost_from_stats(spins, total_neighbors, 8, 0, tech);
    CHECK(l.bits == static_cast<uint64_t>(total_neighbors) * 9);
    const uint64_t bytes = (l.bits + 7) / 8;
    CHECK(l.cycles == (bytes + 63) / 64);
    CHECK(l.storage_overflow); // honesty flag: multi-round streaming needed
}

TEST_CASE("prefetch threshold from the published latencies") {
    const TechParams tech;
    // (20ns DRAM + 100ns storage-to-compute) / 5ns cycle = 24 rows.
    CHECK(prefetch_threshold_rows(tech) == 24);
}

TEST_CASE("BRIM operating point and mode ratio") {
    const TechParams tech;
    const BaselineParams params;
    GraphStats stats;
    stats.spins = 2000;
    stats.total_neighbors = 2000 * 100;
    stats.avg_neighbors = 100.0;
    stats.resolution = 8;

    const CostReport best = brim_cost(stats, 1, params, tech, BrimMode::Best, false);
    const CostReport worst = brim_cost(stats, 1, params, tech, BrimMode::Worst, false);
    // 250mW oscillator bank at the reference point, plus DACs and mux/flop logic.
    const double expected_power =
        0.250 + 16 * 4e-6 + params.brim_logic_power;
    CHECK(best.average_power == doctest::Approx(expected_power));
    CHECK(best.cycles * 13 == worst.cycles * 4); // exactly the 4/13 ratio
}

TEST_CASE("BRIM best case: one spin, one neighbour, one iteration is 4 cycles") {
    const TechParams tech;
    const BaselineParams params;
    GraphStats stats;
    stats.spins = 1;
    stats.total_neighbors = 1;
    stats.avg_neighbors = 1.0;
    stats.resolution = 4;
    CHECK(brim_cost(stats, 1, params, tech, BrimMode::Best, false).cycles == 4);
}

TEST_CASE("eDRAM baseline applicability gate") {
    const TechParams tech;
    const BaselineParams params;
    const IsingGraph kings4 = kings_graph(4, 4, 4, 1);
    CHECK_THROWS_AS(isingcim_cost(kings4, 1, tech, params, false), Unsupported);

    IsingGraph chainplus(6, 2);
    for (int i = 0; i + 1 < 6; ++i) chainplus.add_edge(i, i + 1, 1);
    chainplus.add_edge(0, 5, 1); // ring: not a King's lattice
    CHECK_THROWS_AS(isingcim_cost(chainplus, 1, tech, params, false), Unsupported);

    const IsingGraph kings2 = kings_graph(4, 4, 2, 1);
    CHECK_NOTHROW(isingcim_cost(kings2, 1, tech, params, false));
}

TEST_CASE("eDRAM baseline cycle model: 3 per XNOR bit plus 2 per update") {
    const TechParams tech;
    const BaselineParams params;
    const IsingGraph g = kings_graph(3, 3, 2, 1);
    const GraphStats stats = graph_stats(g);
    const CostReport r = isingcim_cost(g, 5, tech, params, false);
    const uint64_t expected =
        5 * (static_cast<uint64_t>(stats.total_neighbors) * 2 * 3 + 9 * 2);
    CHECK(r.cycles == expected);
}

TEST_CASE("eDRAM XNOR event energy is exactly 1.2x the SRAM event") {
    const TechParams tech;
    const BaselineParams params;
    CHECK(isingcim_xnor_event_energy(tech, params) ==
          doctest::Approx(1.2 * sram_xnor_event_energy(tech)));
    CHECK(sram_xnor_event_energy(tech) == doctest::Approx(85e-15));
}

TEST_CASE("cross-design energy ordering on a 1K-spin molecular instance") {
    const IsingGraph proto = gen_molecular(32, 32, 2, 42); // King's, R=2
    const int64_t iters = 40;
    const double e_n3 = run_design_cost(Design::N3, proto, iters, true).total_energy;
    const double e_n2 = run_design_cost(Design::N2, proto, iters, true).total_energy;
    const double e_n1b = run_design_cost(Design::N1b, proto, iters, true).total_energy;
    const double e_n1a = run_design_cost(Design::N1a, proto, iters, true).total_energy;

    const TechParams tech;
    const BaselineParams params;
    const double e_cim =
        isingcim_cost(proto, iters, tech, params, true).total_energy;
    const GraphStats stats = graph_stats(proto);
    const double e_brim =
        brim_cost(stats, iters, params, tech, BrimMode::Best, true).total_energy;

    CHECK(e_n3 < e_n2);
    CHECK(e_n2 < e_n1b);
    CHECK(e_n1b <= e_n1a);
    CHECK(e_n1a < e_cim);
    CHECK(e_cim < e_brim);
}

TEST_CASE("design energy ordering holds at R=4 against BRIM") {
    const IsingGraph proto = image_to_ising(gen_image(40, 25, 8), 4); // 1K px
    const int64_t iters = 40;
    const double e_n3 = run_design_cost(Design::N3, proto, iters, true).total_energy;
    const double e_n2 = run_design_cost(Design::N2, proto, iters, true).total_energy;
    const double e_n1b = run_design_cost(Design::N1b, proto, iters, true).total_energy;
    const double e_n1a = run_design_cost(Design::N1a, proto, iters, true).total_energy;
    const TechParams tech;
    const double e_brim = brim_cost(graph_stats(proto), iters, BaselineParams{},
                                    tech, BrimMode::Best, true)
                              .total_energy;
    CHECK(e_n3 < e_n2);
    CHECK(e_n2 < e_n1b);
    CHECK(e_n1b <= e_n1a);
    CHECK(e_n1a < e_brim);
}

TEST_CASE("spin-stationary energy grows with resolution and connectivity") {
    double previous = 0.0;
    for (int r : {2, 4, 8}) {
        const IsingGraph proto = kings_graph(8, 8, r, 1);
        const double e = run_design_cost(Design::N1a, proto, 4, false).total_energy;
        CHECK(e >= previous);
        previous = e;
    }
    // Denser connectivity at fixed R: the 8-connected lattice costs at least
    // as much as the 4-connected grid.
    const ImageSegmentation img = gen_image(8, 8, 3);
    const IsingGraph grid4 = image_to_ising(img, 4, 4);
    const IsingGraph grid8 = image_to_ising(img, 4, 8);
    const double e4 = run_design_cost(Design::N1a, grid4, 4, false).total_energy;
    const double e8 = run_design_cost(Design::N1a, grid8, 4, false).total_energy;
    CHECK(e8 >= e4);
}

TEST_CASE("mixed-stationary CPI is invariant to resolution at fixed mapping") {
    uint64_t cpi_at_r[3];
    int idx = 0;
    for (int r : {2, 4, 8}) {
        IsingGraph g = kings_graph(10, 10, r, 1);
        ArchEngine engine(g, Design::N3);
        AnnealConfig cfg = default_anneal_config(r);
        cfg.max_iterations = 1;
        engine.solve(cfg);
        cpi_at_r[idx++] = engine.steady_cpi();
    }
    CHECK(cpi_at_r[0] == cpi_at_r[1]);
    CHECK(cpi_at_r[1] == cpi_at_r[2]);
}

TEST_CASE("tech parameter validation") {
    TechParams tech;
    tech.cycle_time = 0.0;
    CHECK_THROWS_AS(validate(tech), InvalidArgument);
}
