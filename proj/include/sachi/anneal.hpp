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

#ifndef SACHI_ANNEAL_HPP
#define SACHI_ANNEAL_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "sachi/graph.hpp"
#include "sachi/rng.hpp"

namespace sachi {

struct AnnealConfig {
    double init_temp = 0.0;          // > 0; default_init_temp(R) when unset
    int64_t max_iterations = 1000;
    int64_t convergence_window = 10; // >= 1
    uint64_t rng_seed = 1;
};

// Default starting temperature 2^R: scales with the coefficient magnitude so
// early uphill acceptance stays meaningful at any resolution.
double default_init_temp(int resolution);

AnnealConfig default_anneal_config(int resolution);
void validate(const AnnealConfig& cfg);

struct SolveResult {
    std::vector<Spin> final_spins;
    std::vector<int64_t> hamiltonian_trace; // H at the end of each iteration
    std::vector<int64_t> anneal_flips;      // spins changed per iteration
    int64_t iterations_run = 0;
    bool converged = false;
};

// Spin update by the sign of the local field: -1 when positive, +1 when
// negative, a seeded coin at zero.
Spin spin_update(int64_t h_sigma, RngStream& rng);

// Metropolis acceptance at temperature init_temp/iter_num. Draws one uniform
// sample on every call; likelihood saturates at 1 so a non-increase in H is
// accepted for every draw.
bool anneal_accept(int64_t iter_num, int64_t h_updated, int64_t h_current,
                   const AnnealConfig& cfg, RngStream& rng);

// One sweep updates every spin once. Local fields are computed against the
// iteration-start snapshot (spins caught mid-sweep see their neighbours'
// old values, exactly like hardware whose compute rows stay fixed for the
// whole iteration), while the Metropolis step compares the candidate against
// the live running state; a reject takes the opposite of the proposal.
//
// compute_fields must fill h_sigma[i] for all spins from `snapshot`; the
// architectural engines route this through their bit-level pipelines, the
// reference solver through local_field. on_iteration_end (optional) sees the
// committed sweep, e.g. for storage-array write-back.
struct SweepHooks {
    std::function<void(std::span<const Spin> snapshot,
                       std::vector<int64_t>& h_sigma)>
        compute_fields;
    std::function<void(int64_t iteration, std::span<const Spin> snapshot,
                       std::span<const Spin> working)>
        on_iteration_end;
};

// Runs seeded sweeps until H has been flat across `convergence_window`
// consecutive iteration boundaries or max_iterations is hit. Initial spins
// are drawn from the stream, so the run is a pure function of (graph, cfg).
// Leaves the graph's spins at the final state.
SolveResult solve_with(IsingGraph& graph, const AnnealConfig& cfg,
                       const SweepHooks& hooks);

// Reference solver: compute_fields = local_field over the snapshot.
SolveResult solve(IsingGraph& graph, const AnnealConfig& cfg);

} // namespace sachi

#endif // SACHI_ANNEAL_HPP
