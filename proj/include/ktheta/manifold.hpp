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

#ifndef KTHETA_MANIFOLD_HPP
#define KTHETA_MANIFOLD_HPP

// The lattice Gamma acting on R^4 by
//
//   a: (x, y, z, t) -> (x + 1, y, z + y, t)
//   b: (x, y, z, t) -> (x, y + 1, z, t)
//   c: (x, y, z, t) -> (x, y, z + 1, t)
//   d: (x, y, z, t) -> (x, y, z, t + 1)
//
// with [a, b] = c central. Words are kept in the normal form a^m b^n c^p d^q and
// w(u) means the rightmost factor acts first.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>

#include "series.hpp"

namespace ktheta
{

struct KTPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double t = 0.0;

    /// Validating constructor for external input.
    static KTPoint make(double x, double y, double z, double t)
    {
        KTPoint u{x, y, z, t};
        if (!u.is_finite()) {
            throw std::invalid_argument("KTPoint coordinates must be finite");
        }
        return u;
    }

    bool is_finite() const noexcept
    {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) && std::isfinite(t);
    }

    double operator[](int i) const
    {
        switch (i) {
            case 0: return x;
            case 1: return y;
            case 2: return z;
            case 3: return t;
        }
        throw std::out_of_range("KTPoint index");
    }

    double &operator[](int i)
    {
        switch (i) {
            case 0: return x;
            case 1: return y;
            case 2: return z;
            case 3: return t;
        }
        throw std::out_of_range("KTPoint index");
    }

    friend bool operator==(const KTPoint &, const KTPoint &) = default;
};

inline std::ostream &operator<<(std::ostream &os, const KTPoint &u)
{
    return os << '(' << u.x << ", " << u.y << ", " << u.z << ", " << u.t << ')';
}

inline double euclidean_distance(const KTPoint &u, const KTPoint &v)
{
    return std::hypot(std::hypot(u.x - v.x, u.y - v.y), std::hypot(u.z - v.z, u.t - v.t));
}

/// Normal-form word a^m b^n c^p d^q.
struct GroupWord {
    long m = 0;
    long n = 0;
    long p = 0;
    long q = 0;

    static constexpr GroupWord identity() { return {}; }
    static constexpr GroupWord a() { return {1, 0, 0, 0}; }
    static constexpr GroupWord b() { return {0, 1, 0, 0}; }
    static constexpr GroupWord c() { return {0, 0, 1, 0}; }
    static constexpr GroupWord d() { return {0, 0, 0, 1}; }

    friend bool operator==(const GroupWord &, const GroupWord &) = default;
};

inline std::ostream &operator<<(std::ostream &os, const GroupWord &w)
{
    return os << "a^" << w.m << " b^" << w.n << " c^" << w.p << " d^" << w.q;
}

inline KTPoint act(const GroupWord &w, const KTPoint &u)
{
    const double m = static_cast<double>(w.m);
    const double yn = u.y + static_cast<double>(w.n);
    return {u.x + m, yn, u.z + static_cast<double>(w.p) + m * yn, u.t + static_cast<double>(w.q)};
}

/// The word acting as w1 after w2.
constexpr GroupWord compose(const GroupWord &w1, const GroupWord &w2)
{
    return {w1.m + w2.m, w1.n + w2.n, w1.p + w2.p - w1.n * w2.m, w1.q + w2.q};
}

constexpr GroupWord inverse(const GroupWord &w)
{
    return {-w.m, -w.n, -w.p - w.n * w.m, -w.q};
}

struct Reduction {
    KTPoint point; ///< representative in [0,1)^4
    GroupWord word; ///< act(word, point) == original
};

namespace detail
{

// floor with the fractional part forced into [0, 1) despite rounding.
inline double split_floor(double v, long &whole)
{
    double f = std::floor(v);
    double frac = v - f;
    if (frac >= 1.0) {
        f += 1.0;
        frac = 0.0;
    }
    whole = static_cast<long>(f);
    return frac;
}

} // namespace detail

/// Fundamental-domain representative: m = floor(x), n = floor(y), q = floor(t), p = floor(z - m y).
inline Reduction reduce(const KTPoint &u)
{
    Reduction r;
    r.point.x = detail::split_floor(u.x, r.word.m);
    r.point.y = detail::split_floor(u.y, r.word.n);
    r.point.t = detail::split_floor(u.t, r.word.q);
    r.point.z = detail::split_floor(u.z - static_cast<double>(r.word.m) * u.y, r.word.p);
    return r;
}

/// Distance on the quotient: reduce both points, then minimise the Euclidean
/// distance over words with every exponent in [-2, 2], moving either point.
/// The action shears z by y, so moving only one side would not be symmetric.
inline double quotient_distance(const KTPoint &u, const KTPoint &v)
{
    const KTPoint u0 = reduce(u).point;
    const KTPoint v0 = reduce(v).point;
    double best = std::numeric_limits<double>::infinity();
    for (long m = -2; m <= 2; ++m) {
        for (long n = -2; n <= 2; ++n) {
            for (long p = -2; p <= 2; ++p) {
                for (long q = -2; q <= 2; ++q) {
                    const GroupWord w{m, n, p, q};
                    best = std::min({best, euclidean_distance(u0, act(w, v0)), euclidean_distance(act(w, u0), v0)});
                }
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Multiplicators of the bundle L: theta_KT(g u) = e_g(u) theta_KT(u) with
// e_a(u) = exp(-2 pi i (z + i x)), e_b = e_c = 1, e_d(u) = exp(-2 pi i (y + i t)).
// Every multiplicator is stored through its branch function F_w(u), e_w = exp(2 pi i F_w).

namespace detail
{

enum class Generator { a, b, c, d };

inline complex generator_branch(Generator g, const KTPoint &u)
{
    switch (g) {
        case Generator::a: return -complex(u.z, u.x);
        case Generator::d: return -complex(u.y, u.t);
        default: return 0.0;
    }
}

inline KTPoint apply(Generator g, const KTPoint &u, int sign)
{
    const double s = sign;
    switch (g) {
        case Generator::a: return {u.x + s, u.y, u.z + s * u.y, u.t};
        case Generator::b: return {u.x, u.y + s, u.z, u.t};
        case Generator::c: return {u.x, u.y, u.z + s, u.t};
        case Generator::d: return {u.x, u.y, u.z, u.t + s};
    }
    return u;
}

} // namespace detail

/// Branch function of e_w, accumulated along the normal form with the cocycle
/// rule e_{lambda mu}(u) = e_lambda(mu u) e_mu(u) and e_{g^-1}(u) = 1 / e_g(g^-1 u).
inline complex branch_function(const GroupWord &w, const KTPoint &u)
{
    using detail::Generator;
    complex acc = 0.0;
    KTPoint v = u;
    auto run = [&](Generator g, long count) {
        for (long j = 0; j < count; ++j) {
            acc += detail::generator_branch(g, v);
            v = detail::apply(g, v, +1);
        }
        for (long j = 0; j < -count; ++j) {
            v = detail::apply(g, v, -1);
            acc -= detail::generator_branch(g, v);
        }
    };
    run(Generator::d, w.q);
    run(Generator::c, w.p);
    run(Generator::b, w.n);
    run(Generator::a, w.m);
    return acc;
}

inline complex multiplicator(const GroupWord &w, const KTPoint &u)
{
    return std::exp(complex(0.0, 2.0 * pi) * branch_function(w, u));
}

/// |e_w1(w2 u) e_w2(u) - e_{w1 w2}(u)| / |e_{w1 w2}(u)|.
inline double cocycle_residual(const GroupWord &w1, const GroupWord &w2, const KTPoint &u)
{
    const complex lhs = multiplicator(w1, act(w2, u)) * multiplicator(w2, u);
    const complex rhs = multiplicator(compose(w1, w2), u);
    return std::abs(lhs - rhs) / std::abs(rhs);
}

// ---------------------------------------------------------------------------

namespace axis
{
inline constexpr int x = 0;
inline constexpr int y = 1;
inline constexpr int z = 2;
inline constexpr int t = 3;
} // namespace axis

/// Antisymmetric coefficient matrix of a 2-form sum_{i<j} W_ij dx_i ^ dx_j in the
/// coordinate basis (dx, dy, dz, dt).
class TwoForm
{
public:
    TwoForm() { m_w.setZero(); }

    double operator()(int i, int j) const { return m_w(i, j); }

    void set(int i, int j, double v)
    {
        if (i == j) {
            throw std::invalid_argument("diagonal of a 2-form is identically zero");
        }
        m_w(i, j) = v;
        m_w(j, i) = -v;
    }

    const Eigen::Matrix4d &matrix() const noexcept { return m_w; }

    static TwoForm from_matrix(const Eigen::Matrix4d &w)
    {
        TwoForm f;
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                f.set(i, j, 0.5 * (w(i, j) - w(j, i)));
            }
        }
        return f;
    }

    TwoForm &operator+=(const TwoForm &o)
    {
        m_w += o.m_w;
        return *this;
    }

    friend TwoForm operator+(TwoForm a, const TwoForm &b) { return a += b; }

private:
    Eigen::Matrix4d m_w;
};

/// Pf = W_xy W_zt - W_xz W_yt + W_xt W_yz; the form is nondegenerate iff Pf != 0.
inline double pfaffian(const TwoForm &w)
{
    using namespace axis;
    return w(x, y) * w(z, t) - w(x, z) * w(y, t) + w(x, t) * w(y, z);
}

/// omega_KT = (dz - x dy) ^ dx + dy ^ dt.
inline TwoForm omega_kt(const KTPoint &u)
{
    TwoForm w;
    w.set(axis::x, axis::y, u.x);
    w.set(axis::x, axis::z, -1.0);
    w.set(axis::y, axis::t, 1.0);
    return w;
}

} // namespace ktheta

#endif
