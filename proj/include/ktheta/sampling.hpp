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

#ifndef KTHETA_SAMPLING_HPP
#define KTHETA_SAMPLING_HPP

#include <complex>
#include <cstdint>
#include <random>

#include "manifold.hpp"

namespace ktheta
{

/// Seeded source of sample points, shifts and words. Same seed, same stream.
class Sampler
{
public:
    explicit Sampler(std::uint64_t seed) : m_rng(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(m_rng); }

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(m_rng); }

    std::complex<double> complex_in(double lo, double hi)
    {
        const double re = uniform(lo, hi);
        const double im = uniform(lo, hi);
        return {re, im};
    }

    /// Uniform point of the unit cube [0,1)^4.
    KTPoint fundamental_point()
    {
        return box_point(0.0, 1.0);
    }

    KTPoint box_point(double lo, double hi)
    {
        KTPoint u;
        u.x = uniform(lo, hi);
        u.y = uniform(lo, hi);
        u.z = uniform(lo, hi);
        u.t = uniform(lo, hi);
        return u;
    }

    GroupWord word(long max_abs)
    {
        GroupWord w;
        w.m = integer(-max_abs, max_abs);
        w.n = integer(-max_abs, max_abs);
        w.p = integer(-max_abs, max_abs);
        w.q = integer(-max_abs, max_abs);
        return w;
    }

    std::mt19937_64 &engine() noexcept { return m_rng; }

private:
    std::mt19937_64 m_rng;
};

} // namespace ktheta

#endif
