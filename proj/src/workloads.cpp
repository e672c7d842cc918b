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

#include "sachi/workloads.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sachi/errors.hpp"
#include "sachi/rng.hpp"

namespace sachi {

namespace {

int64_t ic_max(int resolution) {
    return (int64_t{1} << (resolution - 1)) - 1;
}

} // namespace

// ---- Asset allocation -------------------------------------------------------

IsingGraph asset_to_ising(const AssetAllocation& assets, int resolution,
                          AssetForm form) {
    if (assets.values.empty()) throw InvalidArgument("no asset values");
    const int64_t cap = ic_max(resolution);
    for (int64_t v : assets.values) {
        if (v <= 0) throw InvalidArgument("asset values must be positive");
        if (v > cap) {
            throw InvalidArgument("asset value " + std::to_string(v) +
                                  " does not fit " + std::to_string(resolution) +
                                  " bits");
        }
    }
    const auto m = static_cast<int64_t>(assets.values.size());

    if (form == AssetForm::Star) {
        IsingGraph g(m + 1, resolution);
        for (int64_t i = 0; i < m; ++i) {
            g.add_edge(0, i + 1, assets.values[i]);
        }
        return g;
    }

    // Complete coupling J_ij = -v_i*v_j; scale when products overflow R bits.
    IsingGraph g(m, resolution);
    if (m == 1) return g; // single asset: nothing to pair
    int64_t max_product = 0;
    for (int64_t i = 0; i < m; ++i) {
        for (int64_t j = i + 1; j < m; ++j) {
            max_product = std::max(max_product,
                                   assets.values[i] * assets.values[j]);
        }
    }
    const double scale =
        max_product > cap ? static_cast<double>(cap) / static_cast<double>(max_product)
                          : 1.0;
    for (int64_t i = 0; i < m; ++i) {
        for (int64_t j = i + 1; j < m; ++j) {
            const double p = static_cast<double>(assets.values[i]) *
                             static_cast<double>(assets.values[j]) * scale;
            const auto w = static_cast<int64_t>(std::floor(p + 0.5));
            g.add_edge(i, j, -std::max<int64_t>(w, 1));
        }
    }
    return g;
}

int64_t asset_imbalance(const AssetAllocation& assets,
                        std::span<const Spin> assignment) {
    if (assignment.size() != assets.values.size()) {
        throw InvalidArgument("assignment size mismatch");
    }
    int64_t sum = 0;
    for (size_t i = 0; i < assets.values.size(); ++i) {
        sum += assets.values[i] * assignment[i];
    }
    return std::abs(sum);
}

AssetAllocation gen_assets(int64_t count, int resolution, uint64_t seed,
                           bool force_even_split) {
    if (count < 1) throw InvalidArgument("asset count must be >= 1");
    RngStream rng(seed);
    AssetAllocation a;
    const int64_t cap = ic_max(resolution);
    if (force_even_split) {
        if (count % 2 != 0) {
            throw InvalidArgument("even split needs an even asset count");
        }
        // Duplicate every value: pairing duplicates on opposite sides is a
        // perfect partition.
        for (int64_t i = 0; i < count / 2; ++i) {
            const int64_t v = rng.next_int(1, cap);
            a.values.push_back(v);
            a.values.push_back(v);
        }
    } else {
        for (int64_t i = 0; i < count; ++i) {
            a.values.push_back(rng.next_int(1, cap));
        }
    }
    return a;
}

AssetAllocation load_assets_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open asset file: " + path);
    AssetAllocation a;
    std::string tok;
    while (std::getline(in, tok, ',')) {
        std::istringstream ls(tok);
        int64_t v;
        while (ls >> v) a.values.push_back(v);
    }
    if (a.values.empty()) throw IoError("no asset values in " + path);
    return a;
}

// ---- Image segmentation -----------------------------------------------------

ImageSegmentation load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image: " + path);

    auto next_token = [&in, &path]() -> std::string {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw IoError("truncated PGM header: " + path);
    };

    const std::string magic = next_token();
    if (magic != "P2" && magic != "P5") {
        throw IoError("not a PGM (P2/P5) file: " + path);
    }
    ImageSegmentation img;
    img.width = std::stoi(next_token());
    img.height = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (img.width < 1 || img.height < 1 || maxval < 1 || maxval > 65535) {
        throw IoError("bad PGM dimensions: " + path);
    }
    img.maxval = static_cast<uint16_t>(maxval);
    const size_t count = static_cast<size_t>(img.width) * img.height;
    img.pixels.reserve(count);

    if (magic == "P2") {
        for (size_t i = 0; i < count; ++i) {
            img.pixels.push_back(static_cast<uint16_t>(std::stoi(next_token())));
        }
    } else {
        in.get(); // single whitespace after maxval
        const int bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> raw(count * bytes);
        in.read(reinterpret_cast<char*>(raw.data()),
                static_cast<std::streamsize>(raw.size()));
        if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
            throw IoError("truncated PGM payload: " + path);
        }
        for (size_t i = 0; i < count; ++i) {
            img.pixels.push_back(
                bytes == 1 ? raw[i]
                           : static_cast<uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]));
        }
    }
    return img;
}

ImageSegmentation gen_image(int32_t width, int32_t height, uint64_t seed) {
    if (width < 1 || height < 1) throw InvalidArgument("bad image size");
    RngStream rng(seed);
    ImageSegmentation img;
    img.width = width;
    img.height = height;
    img.maxval = 255;
    img.pixels.resize(static_cast<size_t>(width) * height);
    for (int32_t y = 0; y < height; ++y) {
        for (int32_t x = 0; x < width; ++x) {
            const int base = x < width / 2 ? 60 : 200;
            const auto noise = static_cast<int>(rng.next_int(-10, 10));
            img.pixels[static_cast<size_t>(y) * width + x] =
                static_cast<uint16_t>(std::clamp(base + noise, 0, 255));
        }
    }
    return img;
}

int64_t quantize_magnitude(int64_t magnitude, int64_t max_magnitude,
                           int resolution) {
    if (magnitude < 0 || max_magnitude < 1) {
        throw InvalidArgument("bad quantizer input");
    }
    const int64_t cap = ic_max(resolution);
    const double scaled = static_cast<double>(magnitude) *
                          static_cast<double>(cap) /
                          static_cast<double>(max_magnitude);
    return static_cast<int64_t>(std::floor(scaled + 0.5));
}

IsingGraph image_to_ising(const ImageSegmentation& image, int resolution,
                          int connectivity) {
    if (connectivity != 4 && connectivity != 8) {
        throw InvalidArgument("connectivity must be 4 or 8");
    }
    const int64_t n = static_cast<int64_t>(image.width) * image.height;
    if (n < 2) throw InvalidArgument("image must have at least 2 pixels");
    IsingGraph g(n, resolution);

    auto idx = [&](int32_t x, int32_t y) {
        return static_cast<int64_t>(y) * image.width + x;
    };
    auto link = [&](int32_t x0, int32_t y0, int32_t x1, int32_t y1) {
        const int64_t d =
            std::abs(static_cast<int64_t>(image.pixels[idx(x0, y0)]) -
                     static_cast<int64_t>(image.pixels[idx(x1, y1)]));
        // Max-cut sign convention: minimizing H maximizes the cut.
        g.add_edge(idx(x0, y0), idx(x1, y1),
                   -quantize_magnitude(d, image.maxval, resolution));
    };

    for (int32_t y = 0; y < image.height; ++y) {
        for (int32_t x = 0; x < image.width; ++x) {
            if (x + 1 < image.width) link(x, y, x + 1, y);
            if (y + 1 < image.height) link(x, y, x, y + 1);
            if (connectivity == 8 && y + 1 < image.height) {
                if (x + 1 < image.width) link(x, y, x + 1, y + 1);
                if (x > 0) link(x, y, x - 1, y + 1);
            }
        }
    }
    return g;
}

int64_t segmentation_cut_weight(const IsingGraph& graph,
                                std::span<const Spin> labeling) {
    if (labeling.size() != static_cast<size_t>(graph.num_spins())) {
        throw InvalidArgument("labeling size mismatch");
    }
    int64_t cut = 0;
    for (const auto& e : graph.edges()) {
        if (labeling[e.i] != labeling[e.j]) cut += -e.weight;
    }
    return cut;
}

// ---- Travelling salesman ----------------------------------------------------

TspDecision gen_tsp(int32_t num_cities, int resolution, uint64_t seed,
                    int64_t threshold_w) {
    if (num_cities < 2) throw InvalidArgument("need at least 2 cities");
    RngStream rng(seed);
    TspDecision t;
    t.num_cities = num_cities;
    t.threshold_w = threshold_w;
    t.distances.assign(static_cast<size_t>(num_cities) * num_cities, 0);
    const int64_t cap = ic_max(resolution);
    for (int32_t i = 0; i < num_cities; ++i) {
        for (int32_t j = i + 1; j < num_cities; ++j) {
            const int64_t d = rng.next_int(1, cap);
            t.distances[static_cast<size_t>(i) * num_cities + j] = d;
            t.distances[static_cast<size_t>(j) * num_cities + i] = d;
        }
    }
    return t;
}

TspDecision load_tsp_csv(const std::string& path, int64_t threshold_w) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open distance matrix: " + path);
    std::vector<std::vector<int64_t>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        std::vector<int64_t> row;
        int64_t v;
        while (ls >> v) row.push_back(v);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    const auto n = static_cast<int32_t>(rows.size());
    if (n < 2) throw IoError("distance matrix too small: " + path);
    TspDecision t;
    t.num_cities = n;
    t.threshold_w = threshold_w;
    t.distances.assign(static_cast<size_t>(n) * n, 0);
    for (int32_t i = 0; i < n; ++i) {
        if (static_cast<int32_t>(rows[i].size()) != n) {
            throw IoError("distance matrix is not square: " + path);
        }
        for (int32_t j = 0; j < n; ++j) {
            t.distances[static_cast<size_t>(i) * n + j] = rows[i][j];
        }
    }
    for (int32_t i = 0; i < n; ++i) {
        for (int32_t j = 0; j < n; ++j) {
            if (t.distances[static_cast<size_t>(i) * n + j] !=
                t.distances[static_cast<size_t>(j) * n + i]) {
                throw IoError("distance matrix is not symmetric: " + path);
            }
            if (i != j && t.distances[static_cast<size_t>(i) * n + j] <= 0) {
                throw IoError("distances must be positive: " + path);
            }
        }
    }
    return t;
}

IsingGraph tsp_to_ising(const TspDecision& tsp, int resolution) {
    const int32_t n = tsp.num_cities;
    if (n < 2) throw InvalidArgument("need at least 2 cities");
    int64_t max_d = 0;
    for (int32_t i = 0; i < n; ++i) {
        for (int32_t j = i + 1; j < n; ++j) {
            max_d = std::max(max_d,
                             tsp.distances[static_cast<size_t>(i) * n + j]);
        }
    }
    if (max_d < 1) throw InvalidArgument("distances must be positive");
    IsingGraph g(n, resolution);
    const int64_t cap = ic_max(resolution);
    for (int32_t i = 0; i < n; ++i) {
        for (int32_t j = i + 1; j < n; ++j) {
            const int64_t d = tsp.distances[static_cast<size_t>(i) * n + j];
            const int64_t q = max_d <= cap
                                  ? d
                                  : std::max<int64_t>(
                                        quantize_magnitude(d, max_d, resolution), 1);
            g.add_edge(i, j, -q);
        }
    }
    return g;
}

// ---- King's graph -----------------------------------------------------------

IsingGraph kings_graph(int32_t rows, int32_t cols, int resolution,
                       int64_t uniform_coupling) {
    if (rows < 1 || cols < 1) throw InvalidArgument("bad lattice size");
    IsingGraph g(static_cast<int64_t>(rows) * cols, resolution);
    auto idx = [&](int32_t r, int32_t c) {
        return static_cast<int64_t>(r) * cols + c;
    };
    for (int32_t r = 0; r < rows; ++r) {
        for (int32_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(idx(r, c), idx(r, c + 1), uniform_coupling);
            if (r + 1 < rows) {
                g.add_edge(idx(r, c), idx(r + 1, c), uniform_coupling);
                if (c + 1 < cols) {
                    g.add_edge(idx(r, c), idx(r + 1, c + 1), uniform_coupling);
                }
                if (c > 0) g.add_edge(idx(r, c), idx(r + 1, c - 1), uniform_coupling);
            }
        }
    }
    return g;
}

IsingGraph gen_molecular(int32_t rows, int32_t cols, int resolution,
                         uint64_t seed) {
    IsingGraph lattice = kings_graph(rows, cols, resolution, 1);
    RngStream rng(seed);
    IsingGraph g(lattice.num_spins(), resolution);
    const int64_t cap = ic_max(resolution);
    for (const auto& e : lattice.edges()) {
        g.add_edge(e.i, e.j, rng.next_int(1, cap));
    }
    return g;
}

bool is_kings_graph(const IsingGraph& graph) {
    const int64_t n = graph.num_spins();
    const int64_t e = graph.num_edges();
    for (int64_t rows = 1; rows * rows <= n; ++rows) {
        if (n % rows != 0) continue;
        for (int64_t m : {rows, n / rows}) {
            const int64_t c = n / m;
            // 4mn - 3(m+n) + 2 also covers chains (m = 1).
            if (4 * m * c - 3 * (m + c) + 2 != e) continue;
            bool ok = true;
            for (const auto& edge : graph.edges()) {
                const int64_t dr = std::abs(edge.i / c - edge.j / c);
                const int64_t dc = std::abs(edge.i % c - edge.j % c);
                if (dr > 1 || dc > 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
    }
    return false;
}

// ---- Exhaustive oracle ------------------------------------------------------

GroundState brute_force_ground(const IsingGraph& graph) {
    const int32_t n = graph.num_spins();
    if (n > 24) {
        throw InvalidArgument("brute force is guarded to 24 spins, got " +
                              std::to_string(n));
    }
    GroundState best;
    std::vector<Spin> spins(n);
    bool have = false;
    const uint64_t configs = uint64_t{1} << n;
    // Index 0 as the most significant position makes increasing masks
    // lexicographic, so keeping the first minimum resolves ties.
    for (uint64_t mask = 0; mask < configs; ++mask) {
        for (int32_t i = 0; i < n; ++i) {
            spins[i] = (mask >> (n - 1 - i)) & 1 ? Spin{+1} : Spin{-1};
        }
        const int64_t h = hamiltonian(graph, spins);
        if (!have || h < best.min_h) {
            best.min_h = h;
            best.spins = spins;
            have = true;
        }
    }
    return best;
}

} // namespace sachi
