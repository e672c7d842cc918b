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

#include "sachi/anneal.hpp"

#include <cmath>

#include "sachi/errors.hpp"

namespace sachi {

double default_init_temp(int resolution) {
    return std::ldexp(1.0, resolution); // 2^R
}

AnnealConfig default_anneal_config(int resolution) {
    AnnealConfig cfg;
    cfg.init_temp = default_init_temp(resolution);
    return cfg;
}

void validate(const AnnealConfig& cfg) {
    if (!(cfg.init_temp > 0.0)) {
        throw InvalidArgument("init_temp must be positive");
    }
    if (cfg.max_iterations < 1) {
        throw InvalidArgument("max_iterations must be >= 1");
    }
    if (cfg.convergence_window < 1) {
        throw InvalidArgument("convergence_window must be >= 1");
    }
}

Spin spin_update(int64_t h_sigma, RngStream& rng) {
    if (h_sigma > 0) return Spin{-1};
    if (h_sigma < 0) return Spin{+1};
    return static_cast<Spin>(rng.next_spin());
}

bool anneal_accept(int64_t iter_num, int64_t h_updated, int64_t h_current,
                   const AnnealConfig& cfg, RngStream& rng) {
    if (iter_num < 1) throw InvalidArgument("iter_num must be >= 1");
    const double temperature = cfg.init_temp / static_cast<double>(iter_num);
    const double delta = static_cast<double>(h_updated - h_current);
    const double likelihood = delta <= 0.0 ? 1.0 : std::exp(-delta / temperature);
    return rng.next_u01() < likelihood;
}

SolveResult solve_with(IsingGraph& graph, const AnnealConfig& cfg,
                       const SweepHooks& hooks) {
    validate(cfg);
    if (!hooks.compute_fields) {
        throw InvalidArgument("compute_fields hook is required");
    }

    const int32_t n = graph.num_spins();
    RngStream rng(cfg.rng_seed);

    std::vector<Spin> working(n);
    for (int32_t i = 0; i < n; ++i) {
        working[i] = static_cast<Spin>(rng.next_spin());
    }
    graph.set_spins(working);

    std::vector<Spin> snapshot(n);
    std::vector<int64_t> h_sigma(n);
    int64_t h_running = hamiltonian(graph, working);

    SolveResult result;
    int64_t flat_boundaries = 0;

    for (int64_t iter = 1; iter <= cfg.max_iterations; ++iter) {
        snapshot = working;
        hooks.compute_fields(snapshot, h_sigma);

        for (int32_t i = 0; i < n; ++i) {
            const Spin greedy = spin_update(h_sigma[i], rng);
            // The gate always judges a flip: the greedy one when the update
            // proposes a change, the annealer's perturbation otherwise
            // (annealing perturbs every spin, not only movers). A reject
            // takes the opposite value, so content spins stay put unless
            // the uphill draw wins.
            const Spin candidate = greedy != working[i]
                                       ? greedy
                                       : static_cast<Spin>(-greedy);
            // Candidate energy against the live state: the phase-5 buffer
            // holds mid-sweep updates even though compute rows do not.
            const int64_t live = local_field(graph, working, i);
            const int64_t h_candidate =
                h_running + (candidate - working[i]) * live;
            const bool accept =
                anneal_accept(iter, h_candidate, h_running, cfg, rng);
            const Spin next = accept ? candidate : static_cast<Spin>(-candidate);
            h_running += (next - working[i]) * live;
            working[i] = next;
            graph.set_spin(i, next);
        }

        int64_t flips = 0;
        for (int32_t i = 0; i < n; ++i) {
            if (working[i] != snapshot[i]) ++flips;
        }
        if (!result.hamiltonian_trace.empty() &&
            result.hamiltonian_trace.back() == h_running) {
            ++flat_boundaries;
        } else {
            flat_boundaries = 0;
        }
        result.hamiltonian_trace.push_back(h_running);
        result.anneal_flips.push_back(flips);

        if (hooks.on_iteration_end) {
            hooks.on_iteration_end(iter, snapshot, working);
        }
        if (flat_boundaries >= cfg.convergence_window) {
            result.converged = true;
            break;
        }
    }

    result.iterations_run = static_cast<int64_t>(result.hamiltonian_trace.size());
    result.final_spins = working;
    return result;
}

SolveResult solve(IsingGraph& graph, const AnnealConfig& cfg) {
    SweepHooks hooks;
    hooks.compute_fields = [&graph](std::span<const Spin> snapshot,
                                    std::vector<int64_t>& h_sigma) {
        for (int32_t i = 0; i < graph.num_spins(); ++i) {
            h_sigma[i] = local_field(graph, snapshot, i);
        }
    };
    return solve_with(graph, cfg, hooks);
}

} // namespace sachi
