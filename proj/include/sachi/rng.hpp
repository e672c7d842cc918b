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

#ifndef SACHI_RNG_HPP
#define SACHI_RNG_HPP

#include <cstdint>
#include <random>

namespace sachi {

// Seeded random stream shared by the solver and all architectural engines.
//
// mt19937_64 output is pinned by the standard; the uniform mappings below are
// spelled out explicitly (std::uniform_real_distribution is not portable
// bit-for-bit), so a (seed, draw sequence) pair fully determines every run.
class RngStream {
public:
    explicit RngStream(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double next_u01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform spin in {+1, -1}.
    int next_spin() { return (next_u64() & 1u) ? +1 : -1; }

    // Uniform integer in [lo, hi] via rejection (unbiased).
    int64_t next_int(int64_t lo, int64_t hi) {
        const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return lo + static_cast<int64_t>(x % span);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace sachi

#endif // SACHI_RNG_HPP
