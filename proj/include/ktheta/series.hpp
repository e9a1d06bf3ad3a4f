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

#ifndef KTHETA_SERIES_HPP
#define KTHETA_SERIES_HPP

// Gaussian-type series  sum_{m in Z} P(m) exp(quad*m^2 + lin*m + offset)
// with Re(quad) < 0, summed over a symmetric window [-N, N] whose size is
// chosen by a certified bound on the discarded tail.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

#include "errors.hpp"

namespace ktheta
{

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Absolute tail target and hard cap on the summation half-width.
class TruncationPolicy
{
public:
    TruncationPolicy() = default;
    TruncationPolicy(double epsilon, int max_terms) : m_epsilon(epsilon), m_max_terms(max_terms)
    {
        if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
            throw std::invalid_argument("truncation epsilon must be positive and finite");
        }
        if (max_terms < 1) {
            throw std::invalid_argument("truncation max_terms must be at least 1");
        }
    }

    double epsilon() const noexcept { return m_epsilon; }
    int max_terms() const noexcept { return m_max_terms; }

private:
    double m_epsilon = 1e-14;
    int m_max_terms = 512;
};

namespace detail
{

// Polynomial in the summation index with complex coefficients, ascending powers.
class IndexPolynomial
{
public:
    static constexpr std::size_t max_degree = 8;

    IndexPolynomial() { m_coeffs[0] = 1.0; }

    static IndexPolynomial linear(complex c0, complex c1)
    {
        IndexPolynomial p;
        p.m_coeffs[0] = c0;
        p.m_coeffs[1] = c1;
        p.m_degree = 1;
        return p;
    }

    static IndexPolynomial quadratic(complex c0, complex c1, complex c2)
    {
        IndexPolynomial p;
        p.m_coeffs[0] = c0;
        p.m_coeffs[1] = c1;
        p.m_coeffs[2] = c2;
        p.m_degree = 2;
        return p;
    }

    std::size_t degree() const noexcept { return m_degree; }

    complex operator()(double m) const
    {
        complex acc = m_coeffs[m_degree];
        for (std::size_t j = m_degree; j-- > 0;) {
            acc = acc * m + m_coeffs[j];
        }
        return acc;
    }

    // Majorant Q(M) = sum |c_j| M^j, so that |P(m)| <= Q(|m|).
    double majorant(double abs_m) const
    {
        double acc = std::abs(m_coeffs[m_degree]);
        for (std::size_t j = m_degree; j-- > 0;) {
            acc = acc * abs_m + std::abs(m_coeffs[j]);
        }
        return acc;
    }

    friend IndexPolynomial operator*(const IndexPolynomial &a, const IndexPolynomial &b)
    {
        if (a.m_degree + b.m_degree > max_degree) {
            throw std::invalid_argument("derivative order too high for series evaluation");
        }
        IndexPolynomial r;
        r.m_coeffs[0] = 0.0;
        r.m_degree = a.m_degree + b.m_degree;
        for (std::size_t i = 0; i <= a.m_degree; ++i) {
            for (std::size_t j = 0; j <= b.m_degree; ++j) {
                r.m_coeffs[i + j] += a.m_coeffs[i] * b.m_coeffs[j];
            }
        }
        return r;
    }

private:
    std::array<complex, max_degree + 1> m_coeffs{};
    std::size_t m_degree = 0;
};

struct GaussianSeries {
    complex quad;
    complex lin;
    complex offset;
    IndexPolynomial weight;

    complex term(int m) const
    {
        const double dm = m;
        return weight(dm) * std::exp(quad * dm * dm + lin * dm + offset);
    }
};

// Bound on sum_{m >= M} of Q(m) exp(a m^2 + b m + c) for real a < 0 and M >= 1.
// Consecutive majorant ratios are at most ((m+1)/m)^d exp(a(2m+1) + b), which
// decreases in m, so its value at M dominates a geometric series.
inline double one_sided_tail(double a, double b, double c, const IndexPolynomial &w, int M)
{
    const double dm = M;
    const double ratio = std::pow((dm + 1.0) / dm, static_cast<double>(w.degree())) * std::exp(a * (2.0 * dm + 1.0) + b);
    if (!(ratio < 1.0)) {
        return std::numeric_limits<double>::infinity();
    }
    const double first = w.majorant(dm) * std::exp(a * dm * dm + b * dm + c);
    return first / (1.0 - ratio);
}

/// Certified upper bound on sum_{|m| > N} |term_m|. Infinite before the crossover index.
inline double tail_bound(const GaussianSeries &s, int N)
{
    if (N < 1) {
        throw std::invalid_argument("tail bound needs N >= 1");
    }
    const double a = s.quad.real();
    if (!(a < 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    const double b = s.lin.real();
    const double c = s.offset.real();
    // The negative side is the positive side of m -> -m, which flips b.
    return one_sided_tail(a, b, c, s.weight, N + 1) + one_sided_tail(a, -b, c, s.weight, N + 1);
}

/// Smallest half-width N >= 1 whose tail bound meets the policy.
inline int select_half_width(const GaussianSeries &s, const TruncationPolicy &policy)
{
    for (int N = 1; N <= policy.max_terms(); ++N) {
        if (tail_bound(s, N) <= policy.epsilon()) {
            return N;
        }
    }
    throw TailNotConverged("series tail bound above " + std::to_string(policy.epsilon()) + " after "
                           + std::to_string(policy.max_terms()) + " terms");
}

inline complex partial_sum(const GaussianSeries &s, int N)
{
    complex acc = 0.0;
    for (int m = -N; m <= N; ++m) {
        acc += s.term(m);
    }
    return acc;
}

inline complex certified_sum(const GaussianSeries &s, const TruncationPolicy &policy)
{
    return partial_sum(s, select_half_width(s, policy));
}

} // namespace detail

} // namespace ktheta

#endif
