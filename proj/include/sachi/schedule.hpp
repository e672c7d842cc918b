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

#ifndef SACHI_SCHEDULE_HPP
#define SACHI_SCHEDULE_HPP

#include <cstdint>
#include <functional>
#include <string>

namespace sachi {

// The four data-stationarity designs.
//
//   n1a  spin stationary, bit-position-major coefficient order, tiles
//        filled sequentially; XNOR queue of N*(R+1) bits
//   n1b  spin stationary, coefficient-major order, strided tiles; queue
//        shrinks to one R-bit row
//   n2   coefficient stationary: one neighbour spin per cycle drives R
//        columns at once, no queue
//   n3   mixed stationary: the target spin drives the whole row (all
//        coefficient bits and neighbour-spin equality bits) in one cycle
enum class Design : uint8_t { N1a, N1b, N2, N3 };

const char* to_string(Design d);
Design design_from_string(const std::string& name); // throws InvalidArgument

// Row-decode timing for one spin with `neighbors` neighbours and R-bit
// coefficients. Cycles are 1-based within the spin's phase-1 window.
struct SpinSchedule {
    int64_t p1_cycles = 0;       // in-array XNOR cycles
    int64_t first_p3_cycle = 0;  // first cycle a complete product group is
                                 // available to shift-add (0 if none)
    int64_t queue_peak = 0;      // max XNOR-queue occupancy over the window
    int64_t column_enables = 0;  // sense columns enabled per cycle (0 = all)
};

SpinSchedule spin_schedule(Design design, int64_t neighbors, int64_t resolution);

// Per-cycle walk of the same window, for trace export and queue accounting.
// `enqueued` counts XNOR-queue entries added this cycle (spin-stationary
// designs only), `group_ready` marks a complete product group entering
// shift-add, `drained` entries leave the queue at end of cycle.
struct ScheduleCycle {
    int64_t cycle = 0;
    int64_t enqueued = 0;
    int64_t drained = 0;
    bool group_ready = false;
    int64_t queue_occupancy = 0; // during this cycle, after enqueue
    int64_t column_enables = 0;
};

void for_each_schedule_cycle(Design design, int64_t neighbors, int64_t resolution,
                             const std::function<void(const ScheduleCycle&)>& fn);

} // namespace sachi

#endif // SACHI_SCHEDULE_HPP
