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

#ifndef SACHI_WORKLOADS_HPP
#define SACHI_WORKLOADS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sachi/graph.hpp"

namespace sachi {

// ---- Asset allocation (number partitioning) -------------------------------

struct AssetAllocation {
    std::vector<int64_t> values; // positive asset values, fit in R bits
};

// Complete: the standard number-partitioning coupling J_ij = -v_i*v_j
// (scaled into R bits when products overflow), whose ground state is a
// balanced split. Star: one hub spin coupled to every asset with J = value,
// a sparse shape for mapping/CPI experiments.
enum class AssetForm : uint8_t { Complete, Star };

IsingGraph asset_to_ising(const AssetAllocation& assets, int resolution,
                          AssetForm form = AssetForm::Complete);

// |sum of v_i over side +1 minus side -1| for a complete-form assignment.
int64_t asset_imbalance(const AssetAllocation& assets,
                        std::span<const Spin> assignment);

AssetAllocation gen_assets(int64_t count, int resolution, uint64_t seed,
                           bool force_even_split = false);
AssetAllocation load_assets_csv(const std::string& path);

// ---- Image segmentation (max cut on the pixel grid) ------------------------

struct ImageSegmentation {
    int32_t width = 0;
    int32_t height = 0;
    uint16_t maxval = 255;
    std::vector<uint16_t> pixels; // row major
};

ImageSegmentation load_pgm(const std::string& path); // P2 and P5
// Two flat regions split vertically, plus mild seeded noise.
ImageSegmentation gen_image(int32_t width, int32_t height, uint64_t seed);

// Grid graph (4-connected by default, 8 available) with edge weight
// -quantize(|p_i - p_j|): minimizing H maximizes the cut. The quantizer
// scales |dp| linearly into [0, 2^(R-1)-1] against the image maxval,
// round half up.
IsingGraph image_to_ising(const ImageSegmentation& image, int resolution,
                          int connectivity = 4);

int64_t quantize_magnitude(int64_t magnitude, int64_t max_magnitude,
                           int resolution);

// Total weight of edges cut by the labeling, in quantized units.
int64_t segmentation_cut_weight(const IsingGraph& graph,
                                std::span<const Spin> labeling);

// ---- Travelling salesman, decision form ------------------------------------

struct TspDecision {
    int32_t num_cities = 0;
    std::vector<int64_t> distances; // row-major full matrix, symmetric, >0
    int64_t threshold_w = 0;
};

TspDecision gen_tsp(int32_t num_cities, int resolution, uint64_t seed,
                    int64_t threshold_w = 0);
TspDecision load_tsp_csv(const std::string& path, int64_t threshold_w);

// Complete graph with J_ij = -quantize(d_ij), so minimized H equals the
// decision form's coupling sum; the decision outcome is (final H < W).
IsingGraph tsp_to_ising(const TspDecision& tsp, int resolution);

// ---- Molecular dynamics (King's graph) -------------------------------------

// 8-connected lattice: corners degree 3, edges 5, interior 8. Edge count is
// 4mn - 3(m+n) + 2.
IsingGraph kings_graph(int32_t rows, int32_t cols, int resolution,
                       int64_t uniform_coupling = 1);
// Random positive couplings in [1, 2^(R-1)-1].
IsingGraph gen_molecular(int32_t rows, int32_t cols, int resolution,
                         uint64_t seed);

// Structural test: does this graph equal a King's lattice for some m x n?
bool is_kings_graph(const IsingGraph& graph);

// ---- Exhaustive oracle ------------------------------------------------------

struct GroundState {
    int64_t min_h = 0;
    std::vector<Spin> spins;
};

// Exhaustive minimum over all 2^n configurations, n <= 24; ties resolve to
// the lexicographically smallest configuration (-1 before +1, index 0 most
// significant).
GroundState brute_force_ground(const IsingGraph& graph);

} // namespace sachi

#endif // SACHI_WORKLOADS_HPP
