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

#include "sachi/bitcompute.hpp"

#include <string>

#include "sachi/errors.hpp"

namespace sachi {

namespace {

uint64_t mask_bits(int width) {
    return width >= 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
}

int64_t sign_extend(uint64_t word, int width) {
    const uint64_t sign = uint64_t{1} << (width - 1);
    return static_cast<int64_t>((word ^ sign) - sign);
}

void check_resolution(int r) {
    if (r < kMinResolution || r > kMaxResolution) {
        throw InvalidArgument("resolution must be in [2, 32], got " +
                              std::to_string(r));
    }
}

} // namespace

uint8_t encode_spin(int spin) {
    if (spin == +1) return 1;
    if (spin == -1) return 0;
    throw InvalidArgument("spin must be +1 or -1, got " + std::to_string(spin));
}

int decode_spin(uint8_t bit) {
    if (bit > 1) throw InvalidArgument("spin bit must be 0 or 1");
    return bit ? +1 : -1;
}

EncodedIc encode_ic(int64_t value, int resolution) {
    check_resolution(resolution);
    const int64_t lo = -(int64_t{1} << (resolution - 1));
    const int64_t hi = (int64_t{1} << (resolution - 1)) - 1;
    if (value < lo || value > hi) {
        throw InvalidArgument("coefficient " + std::to_string(value) +
                              " does not fit " + std::to_string(resolution) +
                              " bits");
    }
    EncodedIc ic;
    ic.resolution = resolution;
    ic.bits = static_cast<uint32_t>(static_cast<uint64_t>(value) &
                                    mask_bits(resolution));
    return ic;
}

int64_t decode_ic(const EncodedIc& ic) {
    check_resolution(ic.resolution);
    return sign_extend(ic.bits & mask_bits(ic.resolution), ic.resolution);
}

uint8_t bitcell_xnor(uint8_t stored, uint8_t stored_complement,
                     uint8_t rwl, uint8_t rwl_complement) {
    if (stored > 1 || stored_complement > 1 || rwl > 1 || rwl_complement > 1) {
        throw InvalidArgument("bitcell inputs must be single bits");
    }
    if (stored_complement != (stored ^ 1) || rwl_complement != (rwl ^ 1)) {
        throw InvalidArgument("complement row inconsistent: array corruption");
    }
    return static_cast<uint8_t>((stored & rwl) | (stored_complement & rwl_complement));
}

int64_t xnor_dot(const EncodedIc& j, uint8_t sigma_j_bit) {
    check_resolution(j.resolution);
    if (sigma_j_bit > 1) throw InvalidArgument("spin bit must be 0 or 1");

    const int r = j.resolution;
    const uint8_t rwl = sigma_j_bit;
    const uint8_t rwl_c = rwl ^ 1;

    // Bit-serial composition of the per-cell XNOR outputs, exactly as the
    // array produces them, followed by the sign-extension XNOR of the MSB.
    uint64_t word = 0;
    for (int b = 0; b < r; ++b) {
        const uint8_t stored = (j.bits >> b) & 1u;
        word |= uint64_t{bitcell_xnor(stored, stored ^ 1, rwl, rwl_c)} << b;
    }
    const uint8_t sign = (j.bits >> (r - 1)) & 1u;
    word |= uint64_t{bitcell_xnor(sign, sign ^ 1, rwl, rwl_c)} << r;

    if (sigma_j_bit == 0) {
        word = (word + 1) & mask_bits(r + 1);
    }
    return sign_extend(word, r + 1);
}

const char* to_string(DotPath path) {
    switch (path) {
        case DotPath::XnorDirect: return "xnor";
        case DotPath::XnorPlusOne: return "xnor+1";
        case DotPath::XorDirect: return "xor";
        case DotPath::XorPlusOne: return "xor+1";
    }
    return "?";
}

ReuseAwareDot reuse_aware_dot(const EncodedIc& j, uint8_t sigma_i_bit,
                              uint8_t sigma_j_bit) {
    check_resolution(j.resolution);
    if (sigma_i_bit > 1 || sigma_j_bit > 1) {
        throw InvalidArgument("spin bit must be 0 or 1");
    }

    const int r = j.resolution;
    const uint8_t rwl = sigma_i_bit;
    const uint8_t rwl_c = rwl ^ 1;
    const uint8_t eq = bitcell_xnor(sigma_j_bit, sigma_j_bit ^ 1, rwl, rwl_c);

    ReuseAwareDot out;
    if (eq) {
        out.path = sigma_i_bit ? DotPath::XnorDirect : DotPath::XnorPlusOne;
    } else {
        out.path = sigma_j_bit ? DotPath::XorDirect : DotPath::XorPlusOne;
    }

    // The array computes XNOR against sigma_i; the decision logic inverts the
    // readout on the XOR paths and places the increment by sigma_j's sign.
    uint64_t word = 0;
    for (int b = 0; b < r; ++b) {
        const uint8_t stored = (j.bits >> b) & 1u;
        uint8_t bit = bitcell_xnor(stored, stored ^ 1, rwl, rwl_c);
        if (!eq) bit ^= 1;
        word |= uint64_t{bit} << b;
    }
    const uint8_t sign = (j.bits >> (r - 1)) & 1u;
    uint8_t ext = bitcell_xnor(sign, sign ^ 1, rwl, rwl_c);
    if (!eq) ext ^= 1;
    word |= uint64_t{ext} << r;

    if (out.path == DotPath::XnorPlusOne || out.path == DotPath::XorPlusOne) {
        word = (word + 1) & mask_bits(r + 1);
    }
    out.value = sign_extend(word, r + 1);
    return out;
}

} // namespace sachi
