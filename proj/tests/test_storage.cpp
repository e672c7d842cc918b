#include <algorithm>
#include <set>

#include "doctest.h"
#include "sachi/bitcompute.hpp"
#include "sachi/errors.hpp"
#include "sachi/storage.hpp"
#include "sachi/workloads.hpp"

using namespace sachi;

TEST_CASE("tuple-rep: every edge lands in both endpoints' tuples") {
    IsingGraph g(2, 4);
    g.add_edge(0, 1, 1);
    const StorageArray s = build_storage(g);
    REQUIRE(s.tuples.size() == 2);
    CHECK(s.tuples[0].neighbor_ids == std::vector<int32_t>{1});
    CHECK(s.tuples[1].neighbor_ids == std::vector<int32_t>{0});
    CHECK(decode_ic({s.tuples[0].ic_bits[0], 4}) == 1);
    CHECK(decode_ic({s.tuples[1].ic_bits[0], 4}) == 1);
}

TEST_CASE("every edge of a random graph appears in exactly two tuples") {
    const IsingGraph g = gen_molecular(5, 7, 6, 99);
    const StorageArray s = build_storage(g);
    std::multiset<std::pair<int32_t, int32_t>> seen;
    for (const auto& t : s.tuples) {
        for (int32_t nb : t.neighbor_ids) {
            seen.insert({std::min(t.owner, nb), std::max(t.owner, nb)});
        }
    }
    CHECK(seen.size() == 2 * static_cast<size_t>(g.num_edges()));
    for (const auto& e : g.edges()) {
        CHECK(seen.count({e.i, e.j}) == 2);
    }
}

TEST_CASE("3x3 King's lattice tuple sizes by position") {
    const IsingGraph g = kings_graph(3, 3, 4, 1);
    const StorageArray s = build_storage(g);
    CHECK(s.tuples[0].size() == 3); // corner
    CHECK(s.tuples[1].size() == 5); // edge
    CHECK(s.tuples[4].size() == 8); // centre
}

TEST_CASE("adjacency matrix is symmetric, zero-diagonal, and matches edges") {
    const IsingGraph g = gen_molecular(4, 5, 4, 7);
    const StorageArray s = build_storage(g);
    for (int i = 0; i < g.num_spins(); ++i) {
        CHECK_FALSE(s.adjacency.get(i, i));
        for (int j = 0; j < g.num_spins(); ++j) {
            CHECK(s.adjacency.get(i, j) == s.adjacency.get(j, i));
        }
    }
    for (const auto& e : g.edges()) CHECK(s.adjacency.get(e.i, e.j));
    int64_t set_bits = 0;
    for (int i = 0; i < g.num_spins(); ++i) {
        s.adjacency.for_each_set(i, [&](int32_t) { ++set_bits; });
    }
    CHECK(set_bits == 2 * g.num_edges());
}

TEST_CASE("sparse-backed adjacency answers the same queries as dense") {
    const IsingGraph g = gen_molecular(6, 6, 4, 3);
    const auto dense = AdjacencyMatrix::build(g, 4096);
    const auto sparse = AdjacencyMatrix::build(g, 4); // force CSR backing
    CHECK(dense.dense());
    CHECK_FALSE(sparse.dense());
    for (int i = 0; i < g.num_spins(); ++i) {
        for (int j = 0; j < g.num_spins(); ++j) {
            CHECK(dense.get(i, j) == sparse.get(i, j));
        }
    }
}

TEST_CASE("capacity check: a 1000-spin complete graph overflows 160KB") {
    // 999 neighbours x (8-bit IC + spin bit + 10 id bits) x 1000 tuples.
    const uint64_t bits = storage_occupancy_bits(1000, 999 * 1000, 8, 0);
    CHECK(bits >= uint64_t{999} * 19 * 1000);
    CHECK(bits > kDefaultStorageBytes * 8);

    IsingGraph g(1000, 8);
    for (int i = 0; i < 1000; ++i) {
        for (int j = i + 1; j < 1000; ++j) g.add_edge(i, j, 1);
    }
    const StorageArray s = build_storage(g);
    CHECK(s.overflow);
}

TEST_CASE("a 100-spin King's lattice fits the storage array") {
    const IsingGraph g = kings_graph(10, 10, 8, 1);
    const StorageArray s = build_storage(g);
    CHECK_FALSE(s.overflow);
    // 684 neighbour entries x 9 bits, all fields zero.
    CHECK(s.payload_bits == 684 * 9);
}

TEST_CASE("write-back touches exactly the tuples adjacent to flipped spins") {
    IsingGraph g = gen_molecular(4, 4, 4, 21);
    StorageArray s = build_storage(g);
    std::vector<Spin> before(16, Spin{+1});
    refresh_neighbor_spins(s, before);

    std::vector<Spin> after = before;
    after[5] = -1;
    after[10] = -1;
    const uint64_t moved = write_back_flips(s, before, after);
    CHECK(moved == static_cast<uint64_t>(g.degree(5) + g.degree(10) + 2));

    for (const auto& t : s.tuples) {
        for (size_t k = 0; k < t.neighbor_ids.size(); ++k) {
            const int32_t nb = t.neighbor_ids[k];
            CHECK(t.neighbor_spins[k] == encode_spin(after[nb]));
        }
    }
}

TEST_CASE("prefetch fires exactly when the counter reaches the threshold") {
    PrefetchCounter c = make_prefetch_counter(50, 24);
    CHECK(c.requests_issued == 0);
    c = prefetch_step(c, 26); // 50 -> 24, first touch of the threshold
    CHECK(c.remaining_rows == 24);
    CHECK(c.requests_issued == 1);
    c = prefetch_step(c, 10); // already at/below: no second request
    CHECK(c.requests_issued == 1);
}

TEST_CASE("prefetch disabled at threshold zero") {
    PrefetchCounter c = make_prefetch_counter(50, 0);
    c = prefetch_step(c, 25);
    c = prefetch_step(c, 25);
    CHECK(c.requests_issued == 0); // on-chip problem: DRAM touched once
}

TEST_CASE("prefetch degenerate: threshold at or above the initial count") {
    const PrefetchCounter c = make_prefetch_counter(10, 24);
    CHECK(c.requests_issued == 1); // request up front
    CHECK_THROWS_AS(prefetch_step(c, 11), InvalidArgument);
}
