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

#ifndef SACHI_BITCOMPUTE_HPP
#define SACHI_BITCOMPUTE_HPP

#include <cstdint>

namespace sachi {

// Mixed encoding scheme: spins +1/-1 are stored as bits 1/0, interaction
// coefficients as R-bit two's-complement words. With this encoding the
// J*sigma dot product collapses to a per-bit XNOR plus a conditional
// increment, which is what the in-memory compute path evaluates.

inline constexpr int kMinResolution = 2;
inline constexpr int kMaxResolution = 32;

// +1 -> 1, -1 -> 0.
uint8_t encode_spin(int spin);
int decode_spin(uint8_t bit);

// R-bit two's-complement coefficient word.
struct EncodedIc {
    uint32_t bits = 0;
    int resolution = 0;
};

// Throws InvalidArgument when value does not fit r bits (two's complement)
// or r is outside [2, 32].
EncodedIc encode_ic(int64_t value, int resolution);
int64_t decode_ic(const EncodedIc& ic);

// One 8T bitcell pair evaluating (S AND J) OR (S' AND J'), i.e. XNOR(S, J).
// The complement row must really hold complements; anything else means the
// array content is corrupt and throws InvalidArgument.
uint8_t bitcell_xnor(uint8_t stored, uint8_t stored_complement,
                     uint8_t rwl, uint8_t rwl_complement);

// In-memory dot product J * sigma_j: per-bit XNOR of the coefficient word
// with the spin bit, widened to R+1 bits (the widening bit is one more XNOR
// of the sign bit), plus 1 when sigma_j is negative. The result is exact
// arithmetic, including J = -2^(R-1) times -1.
int64_t xnor_dot(const EncodedIc& j, uint8_t sigma_j_bit);

// The four single-cycle decision paths of the reuse-aware compute. The row
// is driven by the target spin sigma_i; equality of sigma_i and sigma_j is
// itself one XNOR, and selects between the XNOR result and its inversion
// (XOR). The increment follows the sign of sigma_j, the effective
// multiplier.
enum class DotPath : uint8_t {
    XnorDirect,  // spins equal, sigma_i > 0
    XnorPlusOne, // spins equal, sigma_i < 0
    XorDirect,   // spins differ, sigma_j > 0
    XorPlusOne,  // spins differ, sigma_j < 0
};

const char* to_string(DotPath path);

struct ReuseAwareDot {
    int64_t value = 0;
    DotPath path = DotPath::XnorDirect;
};

// Reuse-aware dot product J * sigma_j computed from the row driven by
// sigma_i. Equals xnor_dot(j, sigma_j) for every input.
ReuseAwareDot reuse_aware_dot(const EncodedIc& j, uint8_t sigma_i_bit,
                              uint8_t sigma_j_bit);

} // namespace sachi

#endif // SACHI_BITCOMPUTE_HPP
