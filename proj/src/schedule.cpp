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

#include "sachi/schedule.hpp"

#include "sachi/errors.hpp"

namespace sachi {

const char* to_string(Design d) {
    switch (d) {
        case Design::N1a: return "n1a";
        case Design::N1b: return "n1b";
        case Design::N2: return "n2";
        case Design::N3: return "n3";
    }
    return "?";
}

Design design_from_string(const std::string& name) {
    if (name == "n1a") return Design::N1a;
    if (name == "n1b") return Design::N1b;
    if (name == "n2") return Design::N2;
    if (name == "n3") return Design::N3;
    throw InvalidArgument("unknown design '" + name + "'");
}

SpinSchedule spin_schedule(Design design, int64_t n, int64_t r) {
    if (n < 0) throw InvalidArgument("neighbor count must be >= 0");
    if (r < 1) throw InvalidArgument("resolution must be >= 1");

    SpinSchedule s;
    if (n == 0) return s; // isolated spin: nothing to decode

    switch (design) {
        case Design::N1a:
            // One coefficient bit per cycle, bit position major. A product
            // group is complete when a neighbour's MSB (and its widening
            // bit) arrive, i.e. in the last N cycles; all R+1 bits per
            // neighbour stay queued until the spin's window ends.
            s.p1_cycles = n * r;
            s.first_p3_cycle = (r - 1) * n + 1;
            s.queue_peak = n * (r + 1);
            s.column_enables = 1;
            break;
        case Design::N1b:
            // Coefficient-major: each neighbour's R bits arrive back to
            // back and are consumed as soon as the row fills.
            s.p1_cycles = n * r;
            s.first_p3_cycle = r;
            s.queue_peak = r;
            s.column_enables = 1;
            break;
        case Design::N2:
            // One neighbour spin per cycle, R columns read at once.
            s.p1_cycles = n;
            s.first_p3_cycle = 1;
            s.queue_peak = 0;
            s.column_enables = r;
            break;
        case Design::N3:
            // Whole row in one cycle, no bit select.
            s.p1_cycles = 1;
            s.first_p3_cycle = 1;
            s.queue_peak = 0;
            s.column_enables = 0;
            break;
    }
    return s;
}

void for_each_schedule_cycle(Design design, int64_t n, int64_t r,
                             const std::function<void(const ScheduleCycle&)>& fn) {
    if (n == 0) return;
    const SpinSchedule shape = spin_schedule(design, n, r);
    int64_t occupancy = 0;

    for (int64_t c = 1; c <= shape.p1_cycles; ++c) {
        ScheduleCycle cy;
        cy.cycle = c;
        cy.column_enables = shape.column_enables;
        switch (design) {
            case Design::N1a: {
                const int64_t bit = (c - 1) / n; // bit position round
                // MSB cycles also queue the sign-extension bit.
                cy.enqueued = (bit == r - 1) ? 2 : 1;
                cy.group_ready = (bit == r - 1);
                occupancy += cy.enqueued;
                cy.queue_occupancy = occupancy;
                // Entries are held for the whole spin; bulk drain at the end.
                cy.drained = (c == shape.p1_cycles) ? occupancy : 0;
                if (c == shape.p1_cycles) occupancy = 0;
                break;
            }
            case Design::N1b: {
                const int64_t bit = (c - 1) % r;
                cy.enqueued = 1;
                cy.group_ready = (bit == r - 1);
                occupancy += 1;
                cy.queue_occupancy = occupancy;
                cy.drained = cy.group_ready ? occupancy : 0;
                if (cy.group_ready) occupancy = 0;
                break;
            }
            case Design::N2:
            case Design::N3:
                cy.group_ready = true;
                cy.queue_occupancy = 0;
                break;
        }
        fn(cy);
    }
}

} // namespace sachi
