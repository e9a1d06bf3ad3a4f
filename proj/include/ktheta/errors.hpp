/*
 * Copyright 2026 The ktheta Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KTHETA_ERRORS_HPP
#define KTHETA_ERRORS_HPP

#include <stdexcept>

namespace ktheta
{

// Every failure mode of the library is a distinct exception type so callers
// (and the CLI) can map them to reports without string matching.

/// The certified tail bound did not drop below epsilon within max_terms.
struct TailNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A product of shifted theta functions was requested with shifts not summing to zero.
struct ShiftSumNonzero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Least-squares sample matrix is numerically singular.
struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EquivalentPoints : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SearchFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Every homogeneous coordinate vanished; indicates a truncation failure.
struct AllSectionsVanish : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TorusNotClosed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonCommutingPair : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ktheta

#endif
