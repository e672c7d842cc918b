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

#ifndef SACHI_ERRORS_HPP
#define SACHI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sachi {

// Bad caller input: out-of-range index, value outside the R-bit range, ...
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// File parse/read/write failures.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A problem that cannot be placed onto the configured arrays at all
// (a single tuple wider than a whole tile, inconsistent mapping, ...).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Requested model is not applicable (e.g. the eDRAM baseline outside
// King's graphs or above 2-bit coefficients).
class Unsupported : public std::runtime_error {
public:
    explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sachi

#endif // SACHI_ERRORS_HPP
