#include <cstdlib>

#include "doctest.h"
#include "sachi/bitcompute.hpp"
#include "sachi/engine.hpp"
#include "sachi/errors.hpp"
#include "sachi/rng.hpp"
#include "sachi/workloads.hpp"

using namespace sachi;

namespace {

// Circulant graph: every spin coupled to its +-step ring neighbours, so all
// degrees are uniform. Handy for exact cycle arithmetic.
IsingGraph circulant(int n, int steps, int r, uint64_t seed) {
    RngStream rng(seed);
    IsingGraph g(n, r);
    const int64_t lo = -(int64_t{1} << (r - 1));
    const int64_t hi = (int64_t{1} << (r - 1)) - 1;
    for (int s = 1; s <= steps; ++s) {
        for (int i = 0; i < n; ++i) {
            const int j = (i + s) % n;
            int64_t w = rng.next_int(lo, hi);
            g.add_edge(std::min(i, j), std::max(i, j), w);
        }
    }
    return g;
}

IsingGraph random_graph(int n, int r, uint64_t seed, double density,
                        bool with_fields) {
    RngStream rng(seed);
    IsingGraph g(n, r);
    const int64_t lo = -(int64_t{1} << (r - 1));
    const int64_t hi = (int64_t{1} << (r - 1)) - 1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.next_u01() < density) g.add_edge(i, j, rng.next_int(lo, hi));
        }
    }
    if (with_fields) {
        for (int i = 0; i < n; ++i) {
            if (rng.next_u01() < 0.25) g.set_field(i, rng.next_int(lo, hi));
        }
    }
    return g;
}

constexpr Design kAllDesigns[] = {Design::N1a, Design::N1b, Design::N2,
                                  Design::N3};

} // namespace

TEST_CASE("all four engines reproduce the reference Hamiltonian trace") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        for (int r : {2, 4, 8}) {
            IsingGraph ref_graph = random_graph(48, r, seed * 31 + r, 0.2, true);
            AnnealConfig cfg = default_anneal_config(r);
            cfg.rng_seed = seed;
            cfg.max_iterations = 40;
            const SolveResult ref = solve(ref_graph, cfg);

            for (Design d : kAllDesigns) {
                IsingGraph g = random_graph(48, r, seed * 31 + r, 0.2, true);
                ArchEngine engine(g, d);
                const SolveResult res = engine.solve(cfg);
                CHECK(res.hamiltonian_trace == ref.hamiltonian_trace);
                CHECK(res.final_spins == ref.final_spins);
                CHECK(res.anneal_flips == ref.anneal_flips);
                CHECK(res.converged == ref.converged);
            }
        }
    }
}

TEST_CASE("iteration Hamiltonian equals a fresh evaluation of the final spins") {
    IsingGraph g = gen_molecular(4, 5, 4, 9);
    ArchEngine engine(g, Design::N3);
    AnnealConfig cfg = default_anneal_config(4);
    cfg.max_iterations = 30;
    const SolveResult res = engine.solve(cfg);
    CHECK(hamiltonian(g) == res.hamiltonian_trace.back());
}

TEST_CASE("single-tile spin-stationary cycle count is spins*N*R") {
    // 100 spins of uniform degree 8 at R=4 in one sequentially filled tile.
    IsingGraph g = circulant(100, 4, 4, 5);
    ArchEngine engine(g, Design::N1a);
    AnnealConfig cfg = default_anneal_config(4);
    cfg.max_iterations = 2;
    cfg.convergence_window = 100; // keep both iterations
    engine.solve(cfg);
    CHECK(engine.mapping().rounds() == 1);
    for (int k = 0; k < 100; ++k) CHECK(engine.mapping().slot(k).tile == 0);
    CHECK(engine.steady_cpi() == 100 * 8 * 4);
    for (const auto& it : engine.iteration_totals()) {
        CHECK(it.cpi == 100 * 8 * 4);
    }
}

TEST_CASE("per-iteration cycles take the slowest tile, not the sum") {
    IsingGraph g = circulant(64, 3, 4, 6); // uniform degree 6 over 16 tiles
    ArchEngine engine(g, Design::N2);
    AnnealConfig cfg = default_anneal_config(4);
    cfg.max_iterations = 1;
    engine.solve(cfg);
    // Strided: 4 tuples per tile, N=6 -> makespan 24 cycles, not 64*6.
    CHECK(engine.steady_cpi() == 4 * 6);
}

TEST_CASE("n1a and n1b share the cycle count on an identical mapping") {
    IsingGraph a = circulant(60, 3, 4, 7);
    IsingGraph b = circulant(60, 3, 4, 7);
    EngineOptions opt;
    opt.tiles.tiles = 1; // same single-tile mapping for both
    ArchEngine ea(a, Design::N1a, opt);
    ArchEngine eb(b, Design::N1b, opt);
    AnnealConfig cfg = default_anneal_config(4);
    cfg.max_iterations = 3;
    ea.solve(cfg);
    eb.solve(cfg);
    CHECK(ea.steady_cpi() == eb.steady_cpi());
    // Same events, same data: equal energy inputs except the queue shape.
    CHECK(ea.totals().rwl_activations == eb.totals().rwl_activations);
    CHECK(ea.totals().rbl_discharges == eb.totals().rbl_discharges);
    CHECK(ea.totals().fetch_bits == eb.totals().fetch_bits);
    CHECK(ea.totals().queue_peak == 6 * 5); // N*(R+1)
    CHECK(eb.totals().queue_peak == 4);      // R
}

TEST_CASE("cycle ordering across designs holds on every graph") {
    for (uint64_t seed : {11u, 22u, 33u}) {
        uint64_t cpi[4] = {0, 0, 0, 0};
        for (int di = 0; di < 4; ++di) {
            IsingGraph g = random_graph(80, 4, seed, 0.3, false);
            ArchEngine engine(g, kAllDesigns[di]);
            AnnealConfig cfg = default_anneal_config(4);
            cfg.max_iterations = 1;
            engine.solve(cfg);
            cpi[di] = engine.steady_cpi();
        }
        CHECK(cpi[3] <= cpi[2]); // n3 <= n2
        CHECK(cpi[2] <= cpi[1]); // n2 <= n1b
        CHECK(cpi[1] <= cpi[0]); // n1b <= n1a
    }
}

TEST_CASE("coefficient- and mixed-stationary share the CPI on 1-neighbour graphs") {
    IsingGraph a(50, 8);
    IsingGraph b(50, 8);
    for (int i = 0; i < 50; i += 2) {
        a.add_edge(i, i + 1, 3);
        b.add_edge(i, i + 1, 3);
    }
    ArchEngine ea(a, Design::N2);
    ArchEngine eb(b, Design::N3);
    AnnealConfig cfg = default_anneal_config(8);
    cfg.max_iterations = 1;
    ea.solve(cfg);
    eb.solve(cfg);
    CHECK(ea.steady_cpi() == eb.steady_cpi());
}

TEST_CASE("redundant computes follow the occupied-columns rule") {
    IsingGraph g = circulant(32, 2, 3, 8); // uniform N=4, R=3
    for (Design d : {Design::N1a, Design::N1b}) {
        IsingGraph copy = circulant(32, 2, 3, 8);
        ArchEngine engine(copy, d);
        AnnealConfig cfg = default_anneal_config(3);
        cfg.max_iterations = 1;
        engine.solve(cfg);
        const auto& t = engine.iteration_totals().front();
        const uint64_t activations = 32 * 4 * 3; // sum N*R
        CHECK(t.rwl_activations == activations);
        CHECK(t.required_computes == activations);
        CHECK(t.redundant_computes == activations * (4 - 1));
        CHECK(t.required_computes + t.redundant_computes == t.xnor_ops);
    }
    // Mixed stationary has no redundant computes: every cell is useful.
    IsingGraph copy = circulant(32, 2, 3, 8);
    ArchEngine engine(copy, Design::N3);
    AnnealConfig cfg = default_anneal_config(3);
    cfg.max_iterations = 1;
    engine.solve(cfg);
    const auto& t = engine.iteration_totals().front();
    CHECK(t.redundant_computes == 0);
    CHECK(t.equality_ops == 32 * 4);
    CHECK(t.required_computes == t.xnor_ops);
}

TEST_CASE("reuse factors by design") {
    auto run = [](Design d) {
        IsingGraph g = circulant(48, 4, 4, 10); // uniform N=8, R=4
        ArchEngine engine(g, d);
        AnnealConfig cfg = default_anneal_config(4);
        cfg.max_iterations = 1;
        engine.solve(cfg);
        return engine.average_reuse();
    };
    CHECK(run(Design::N1a) == 1.0);
    CHECK(run(Design::N1b) == 1.0);
    CHECK(run(Design::N2) == 4.0);  // R
    CHECK(run(Design::N3) == 32.0); // N*R
    CHECK(per_spin_reuse(Design::N3, 8, 4) == 32);
    CHECK(per_spin_reuse(Design::N3, 8, 2) == 16);
    CHECK(per_spin_reuse(Design::N3, 999, 4) == 3996);
    CHECK(per_spin_reuse(Design::N2, 8, 2) == 2);
    CHECK(per_spin_reuse(Design::N1a, 8, 4) == 1);
}

TEST_CASE("multi-round refills expose only the uncovered remainder") {
    // 200-spin complete graph at R=4 under n3: 995 bits/tuple, 10 physical
    // rows, so 10 tuples per tile and two rounds (160 + 40 tuples).
    IsingGraph g(200, 4);
    for (int i = 0; i < 200; ++i) {
        for (int j = i + 1; j < 200; ++j) g.add_edge(i, j, 1);
    }
    ArchEngine engine(g, Design::N3);
    AnnealConfig cfg = default_anneal_config(4);
    cfg.max_iterations = 1;
    engine.solve(cfg);
    CHECK(engine.mapping().rounds() == 2);
    // Windows: 10 and 3 cycles. Refills: ceil(9950/512)=20, ceil(2985/512)=6.
    // Round-1 refill hides behind the 10-cycle window; the wrap-around
    // refill of round 0 exposes 20-3 = 17 stall cycles.
    CHECK(engine.iteration_totals().front().refill_stall_cycles == 17);
    CHECK(engine.steady_cpi() == 10 + 3 + 17);
    // Every resident bit is rewritten each iteration.
    CHECK(engine.iteration_totals().front().refill_bits == uint64_t{200} * 995);
}

TEST_CASE("write-back leaves the storage array at the final spin state") {
    IsingGraph g = gen_molecular(5, 5, 4, 12);
    ArchEngine engine(g, Design::N1b);
    AnnealConfig cfg = default_anneal_config(4);
    cfg.max_iterations = 25;
    const SolveResult res = engine.solve(cfg);
    const auto& storage = engine.storage();
    for (const auto& t : storage.tuples) {
        for (size_t k = 0; k < t.neighbor_ids.size(); ++k) {
            CHECK(decode_spin(t.neighbor_spins[k]) ==
                  res.final_spins[t.neighbor_ids[k]]);
        }
    }
}

TEST_CASE("flip refresh movement matches the flipped degree sum") {
    IsingGraph g = gen_molecular(4, 4, 4, 3);
    ArchEngine engine(g, Design::N3);
    AnnealConfig cfg = default_anneal_config(4);
    cfg.max_iterations = 12;
    const SolveResult res = engine.solve(cfg);
    const auto& iters = engine.iteration_totals();
    REQUIRE(iters.size() == static_cast<size_t>(res.iterations_run));
    // Write-back bits: degree+1 per flipped spin, per iteration.
    // Tile refresh bits trail by one iteration (flips land next refresh).
    for (size_t k = 0; k + 1 < iters.size(); ++k) {
        CHECK(iters[k + 1].refresh_bits ==
              iters[k].writeback_bits -
                  static_cast<uint64_t>(res.anneal_flips[k]));
    }
}

TEST_CASE("a 4x3 two-region image segments to the exhaustive max cut") {
    const ImageSegmentation img = gen_image(4, 3, 77);
    IsingGraph g = image_to_ising(img, 4);
    const GroundState ground = brute_force_ground(g);

    IsingGraph run = image_to_ising(img, 4);
    ArchEngine engine(run, Design::N3);
    AnnealConfig cfg = default_anneal_config(4);
    cfg.rng_seed = 2;
    cfg.max_iterations = 300;
    const SolveResult res = engine.solve(cfg);
    CHECK(res.hamiltonian_trace.back() == ground.min_h);
    CHECK(segmentation_cut_weight(g, res.final_spins) ==
          segmentation_cut_weight(g, ground.spins));
}

TEST_CASE("prefetch requests appear only for storage-overflow problems") {
    IsingGraph small = gen_molecular(5, 5, 4, 1);
    ArchEngine e1(small, Design::N3);
    AnnealConfig cfg = default_anneal_config(4);
    cfg.max_iterations = 2;
    e1.solve(cfg);
    CHECK(e1.totals().prefetch_requests == 0);

    IsingGraph big(900, 8);
    for (int i = 0; i < 900; ++i) {
        for (int j = i + 1; j < std::min(900, i + 60); ++j) {
            big.add_edge(i, j, 1);
        }
    }
    ArchEngine e2(big, Design::N3);
    AnnealConfig cfg8 = default_anneal_config(8);
    cfg8.max_iterations = 2;
    e2.solve(cfg8);
    CHECK(e2.storage().overflow);
    CHECK(e2.totals().prefetch_requests > 0);
}

TEST_CASE("per-cycle trace records phases and the queue sawtooth") {
    IsingGraph g = circulant(8, 2, 3, 4); // N=4, R=3
    EngineOptions opt;
    opt.record_cycles = true;
    ArchEngine engine(g, Design::N1a, opt);
    AnnealConfig cfg = default_anneal_config(3);
    cfg.max_iterations = 1;
    engine.solve(cfg);
    const auto& cycles = engine.first_iteration_cycles();
    REQUIRE_FALSE(cycles.empty());
    uint32_t peak = 0;
    bool saw_p3 = false, saw_p5 = false;
    for (const auto& rec : cycles) {
        peak = std::max(peak, rec.queue_occ);
        saw_p3 |= (rec.phase_mask & 0x04) != 0;
        saw_p5 |= (rec.phase_mask & 0x10) != 0;
    }
    CHECK(peak == 4 * (3 + 1)); // N*(R+1) reached in the walked schedule
    CHECK(saw_p3);
    CHECK(saw_p5);
}
