#include <cmath>

#include "doctest.h"
#include "sachi/anneal.hpp"
#include "sachi/errors.hpp"
#include "sachi/graph.hpp"
#include "sachi/rng.hpp"
#include "sachi/workloads.hpp"

using namespace sachi;

TEST_CASE("spin update follows the sign of the local field") {
    RngStream rng(1);
    CHECK(spin_update(5, rng) == -1);
    CHECK(spin_update(-5, rng) == +1);
}

TEST_CASE("spin update at zero field is a seeded coin") {
    // Deterministic per seed, both outcomes reachable.
    RngStream a(3), b(3);
    for (int k = 0; k < 64; ++k) CHECK(spin_update(0, a) == spin_update(0, b));
    RngStream c(4);
    bool saw_up = false, saw_down = false;
    for (int k = 0; k < 256; ++k) {
        const Spin s = spin_update(0, c);
        saw_up |= (s == +1);
        saw_down |= (s == -1);
    }
    CHECK(saw_up);
    CHECK(saw_down);
}

TEST_CASE("anneal always accepts a non-increase") {
    AnnealConfig cfg = default_anneal_config(8);
    RngStream rng(11);
    for (int k = 0; k < 200; ++k) {
        CHECK(anneal_accept(1 + k % 7, -10 - k, -10, cfg, rng));
        CHECK(anneal_accept(1 + k % 7, -10, -10, cfg, rng));
    }
}

TEST_CASE("anneal accepts an uphill move with likelihood exp(-dH/T)") {
    // dH == T makes the likelihood exactly exp(-1) ~= 0.367879.
    AnnealConfig cfg;
    cfg.init_temp = 64.0;
    const double likelihood = std::exp(-1.0);
    CHECK(likelihood == doctest::Approx(0.3678794412).epsilon(1e-9));

    // The decision must be exactly (draw < exp(-1)) for the seeded stream.
    for (uint64_t seed = 0; seed < 50; ++seed) {
        RngStream draw(seed), reference(seed);
        const bool accepted = anneal_accept(1, 14, -50, cfg, draw);
        CHECK(accepted == (reference.next_u01() < likelihood));
    }

    // Monte Carlo sanity: the acceptance rate approaches exp(-1).
    RngStream rng(99);
    int accepted = 0;
    const int trials = 20000;
    for (int k = 0; k < trials; ++k) {
        if (anneal_accept(1, 14, -50, cfg, rng)) ++accepted;
    }
    CHECK(static_cast<double>(accepted) / trials ==
          doctest::Approx(likelihood).epsilon(0.05));
}

TEST_CASE("anneal freezes as the temperature collapses") {
    AnnealConfig cfg;
    cfg.init_temp = 64.0;
    RngStream rng(5);
    // T = 64/64000 -> uphill likelihood underflows to ~0.
    for (int k = 0; k < 100; ++k) {
        CHECK_FALSE(anneal_accept(64000, -10 + 8, -10, cfg, rng));
    }
}

TEST_CASE("config validation") {
    AnnealConfig cfg = default_anneal_config(4);
    CHECK(cfg.init_temp == 16.0);
    cfg.init_temp = 0.0;
    CHECK_THROWS_AS(validate(cfg), InvalidArgument);
    cfg = default_anneal_config(4);
    cfg.convergence_window = 0;
    CHECK_THROWS_AS(validate(cfg), InvalidArgument);
    cfg = default_anneal_config(4);
    cfg.max_iterations = 0;
    CHECK_THROWS_AS(validate(cfg), InvalidArgument);
}

TEST_CASE("two coupled spins converge to the aligned ground state") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        IsingGraph g(2, 4);
        g.add_edge(0, 1, 1);
        AnnealConfig cfg = default_anneal_config(4);
        cfg.rng_seed = seed;
        cfg.max_iterations = 200;
        const SolveResult res = solve(g, cfg);
        CHECK(res.converged);
        CHECK(res.hamiltonian_trace.back() == -1);
        CHECK(res.final_spins[0] == res.final_spins[1]);
    }
}

TEST_CASE("solve is bit-for-bit deterministic") {
    IsingGraph a = gen_molecular(3, 4, 6, 17);
    IsingGraph b = gen_molecular(3, 4, 6, 17);
    AnnealConfig cfg = default_anneal_config(6);
    cfg.rng_seed = 3;
    const SolveResult ra = solve(a, cfg);
    const SolveResult rb = solve(b, cfg);
    CHECK(ra.hamiltonian_trace == rb.hamiltonian_trace);
    CHECK(ra.final_spins == rb.final_spins);
    CHECK(ra.anneal_flips == rb.anneal_flips);
    CHECK(ra.iterations_run == rb.iterations_run);
    CHECK(ra.converged == rb.converged);
}

TEST_CASE("trace length equals iterations run and flips are consistent") {
    IsingGraph g = gen_molecular(3, 3, 4, 2);
    AnnealConfig cfg = default_anneal_config(4);
    cfg.max_iterations = 50;
    const SolveResult res = solve(g, cfg);
    CHECK(res.hamiltonian_trace.size() ==
          static_cast<size_t>(res.iterations_run));
    CHECK(res.anneal_flips.size() == static_cast<size_t>(res.iterations_run));
    CHECK(hamiltonian(g) == res.hamiltonian_trace.back());
}

TEST_CASE("a greedy accepted update never raises H in isolation") {
    // One spin updated alone (everyone else frozen): the spin_update choice
    // with a nonzero field can only lower the energy.
    RngStream rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        IsingGraph g(5, 5);
        for (int i = 0; i < 5; ++i) {
            for (int j = i + 1; j < 5; ++j) {
                g.add_edge(i, j, rng.next_int(-16, 15));
            }
        }
        std::vector<Spin> spins(5);
        for (auto& s : spins) s = static_cast<Spin>(rng.next_spin());
        g.set_spins(spins);
        const int64_t before = hamiltonian(g);
        const int i = static_cast<int>(rng.next_int(0, 4));
        const int64_t hs = local_field(g, i);
        if (hs == 0) continue;
        g.set_spin(i, spin_update(hs, rng));
        CHECK(hamiltonian(g) <= before);
    }
}

TEST_CASE("8-spin random instances land near the exhaustive optimum") {
    int hits = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        RngStream mk(1000 + t);
        IsingGraph g(8, 4);
        for (int i = 0; i < 8; ++i) {
            for (int j = i + 1; j < 8; ++j) {
                int64_t w = 0;
                while (w == 0) w = mk.next_int(-8, 7);
                g.add_edge(i, j, w);
            }
        }
        const GroundState ground = brute_force_ground(g);
        AnnealConfig cfg;
        cfg.init_temp = 64.0;
        cfg.rng_seed = 5000 + t;
        cfg.max_iterations = 300;
        cfg.convergence_window = 1 << 30;
        const SolveResult res = solve(g, cfg);
        const double span = std::abs(static_cast<double>(ground.min_h));
        if (static_cast<double>(res.hamiltonian_trace.back()) <=
            static_cast<double>(ground.min_h) + 0.05 * span) {
            ++hits;
        }
    }
    CHECK(hits >= 95);
}
