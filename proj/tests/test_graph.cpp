#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "sachi/errors.hpp"
#include "sachi/graph.hpp"
#include "sachi/rng.hpp"

using namespace sachi;

namespace {

// Independent oracle for King's-lattice neighbourhoods: scan all vertex
// pairs and link those at Chebyshev distance 1.
IsingGraph kings_by_enumeration(int rows, int cols, int resolution,
                                int64_t weight) {
    IsingGraph g(static_cast<int64_t>(rows) * cols, resolution);
    const int n = rows * cols;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const int dr = std::abs(a / cols - b / cols);
            const int dc = std::abs(a % cols - b % cols);
            if (dr <= 1 && dc <= 1) g.add_edge(a, b, weight);
        }
    }
    return g;
}

IsingGraph random_graph(int n, int r, uint64_t seed, double density = 0.4) {
    RngStream rng(seed);
    IsingGraph g(n, r);
    const int64_t lo = -(int64_t{1} << (r - 1));
    const int64_t hi = (int64_t{1} << (r - 1)) - 1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.next_u01() < density) {
                int64_t w = rng.next_int(lo, hi);
                g.add_edge(i, j, w);
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (rng.next_u01() < 0.3) g.set_field(i, rng.next_int(lo, hi));
    }
    return g;
}

} // namespace

TEST_CASE("hamiltonian of a single pair") {
    IsingGraph g(2, 4);
    g.add_edge(0, 1, 1);
    g.set_spin(0, +1);
    g.set_spin(1, +1);
    CHECK(hamiltonian(g) == -1); // aligned ferromagnetic pair
    g.set_spin(1, -1);
    CHECK(hamiltonian(g) == +1); // anti-aligned
}

TEST_CASE("hamiltonian of the all-up 3x3 King's lattice") {
    IsingGraph g = kings_by_enumeration(3, 3, 4, 1);
    CHECK(g.num_edges() == 20); // enumerated: 3x3 King's graph has 20 edges
    CHECK(hamiltonian(g) == -20);
}

TEST_CASE("local field follows the sign and field conventions") {
    IsingGraph g(2, 4);
    g.add_edge(0, 1, 3);
    g.set_spin(1, +1);
    CHECK(local_field(g, 0) == -3);
    g.set_spin(1, -1);
    g.set_field(0, 1);
    CHECK(local_field(g, 0) == 2); // 3 - 1
    CHECK_THROWS_AS(local_field(g, 5), InvalidArgument);
}

TEST_CASE("local field at the centre of a 3x3 King's lattice") {
    IsingGraph g = kings_by_enumeration(3, 3, 4, 2);
    for (int i = 0; i < 9; ++i) g.set_spin(i, +1);
    CHECK(g.degree(4) == 8);
    CHECK(local_field(g, 4) == -16); // 8 neighbours at J=2, all up
}

TEST_CASE("flipping one spin changes H by 2*s_i*(sum J s_j + h_i)") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        IsingGraph g = random_graph(12, 5, seed);
        RngStream rng(seed * 977);
        std::vector<Spin> spins(12);
        for (auto& s : spins) s = static_cast<Spin>(rng.next_spin());
        g.set_spins(spins);
        const int64_t h0 = hamiltonian(g);
        for (int i = 0; i < 12; ++i) {
            int64_t coupling = 0;
            for (const auto& nb : g.neighbors(i)) {
                coupling += nb.weight * spins[nb.id];
            }
            const int64_t expected =
                h0 + 2 * spins[i] * (coupling + g.field(i));
            auto flipped = spins;
            flipped[i] = static_cast<Spin>(-flipped[i]);
            CHECK(hamiltonian(g, flipped) == expected);
        }
    }
}

TEST_CASE("graph validation") {
    IsingGraph g(4, 3);
    g.add_edge(0, 1, 3);
    CHECK_THROWS_AS(g.add_edge(1, 0, 1), InvalidArgument); // duplicate
    CHECK_THROWS_AS(g.add_edge(2, 2, 1), InvalidArgument); // self loop
    CHECK_THROWS_AS(g.add_edge(0, 9, 1), InvalidArgument); // out of range
    CHECK_THROWS_AS(g.add_edge(2, 3, 4), InvalidArgument); // weight > 3 bits
    CHECK_NOTHROW(g.add_edge(2, 3, -4));                   // -2^(R-1) fits
    CHECK_THROWS_AS(g.set_field(0, 4), InvalidArgument);
    CHECK_THROWS_AS(IsingGraph(0, 4), InvalidArgument);
    CHECK_THROWS_AS(IsingGraph(4, 1), InvalidArgument);
}

TEST_CASE("graph file format round trips") {
    IsingGraph g = random_graph(17, 6, 42);
    const std::string text = format_graph(g);
    IsingGraph back = parse_graph(text);
    CHECK(back.num_spins() == g.num_spins());
    CHECK(back.resolution() == g.resolution());
    CHECK(back.num_edges() == g.num_edges());
    CHECK(format_graph(back) == text); // canonical form is a fixed point
    for (int i = 0; i < 17; ++i) CHECK(back.field(i) == g.field(i));
}

TEST_CASE("graph file I/O on disk") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "sachi_graph_test.txt";
    IsingGraph g(3, 4);
    g.add_edge(0, 1, -2);
    g.add_edge(1, 2, 7);
    g.set_field(2, 3);
    save_graph(g, path.string());
    IsingGraph back = load_graph(path.string());
    CHECK(format_graph(back) == format_graph(g));
    fs::remove(path);
}

TEST_CASE("graph parser reports malformed input") {
    CHECK_THROWS_AS(parse_graph("e 0 1 2\n"), IoError);            // no header
    CHECK_THROWS_AS(parse_graph("ising 2\n"), IoError);            // bad header
    CHECK_THROWS_AS(parse_graph("ising 2 4\nx 1 2\n"), IoError);   // bad tag
    CHECK_THROWS_AS(parse_graph("ising 2 4\ne 0 1\n"), IoError);   // short edge
    CHECK_THROWS_AS(parse_graph("ising 2 4\ne 0 1 99\n"), IoError); // range
    CHECK_THROWS_AS(load_graph("/nonexistent/graph.txt"), IoError);
}
