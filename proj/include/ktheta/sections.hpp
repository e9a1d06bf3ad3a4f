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

#ifndef KTHETA_SECTIONS_HPP
#define KTHETA_SECTIONS_HPP

// Theta functions on the Kodaira-Thurston manifold. A point u = (x, y, z, t)
// carries a fiber curve with argument z + i x and modulus y + i, and a base
// curve with argument y + i t and modulus i. The degree-k sections are
//
//   s_{p,q}(u) = theta^p_k(z + i x, y + i) * theta^q_k(y + i t, i),   0 <= p, q < k,
//
// flattened to coordinate p * k + q, and transform as s(g u) = e_g(u)^k s(u).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "linalg.hpp"
#include "manifold.hpp"
#include "sampling.hpp"
#include "theta.hpp"

namespace ktheta
{

class SectionIndex
{
public:
    SectionIndex(int k, int p, int q) : m_k(k), m_p(p), m_q(q)
    {
        if (k < 1) {
            throw std::invalid_argument("section degree must be at least 1");
        }
        if (p < 0 || p >= k || q < 0 || q >= k) {
            throw std::invalid_argument("section labels must satisfy 0 <= p, q < k");
        }
    }

    int k() const noexcept { return m_k; }
    int p() const noexcept { return m_p; }
    int q() const noexcept { return m_q; }
    int flat() const noexcept { return m_p * m_k + m_q; }

private:
    int m_k;
    int m_p;
    int m_q;
};

struct ZetaShift {
    complex zeta1;
    complex zeta2;
};

inline complex fiber_argument(const KTPoint &u) { return {u.z, u.x}; }
inline complex fiber_modulus(const KTPoint &u) { return {u.y, 1.0}; }
inline complex base_argument(const KTPoint &u) { return {u.y, u.t}; }
inline constexpr complex base_modulus{0.0, 1.0};

/// Values of theta^p_k, p < k, at one (argument, modulus), optionally with the
/// first partials in the argument and in the modulus.
struct ThetaJet {
    std::vector<complex> value;
    std::vector<complex> d_arg;
    std::vector<complex> d_mod;
};

inline ThetaJet theta_jet(int k, complex arg, complex mod, bool derivatives, const TruncationPolicy &policy = {})
{
    ThetaJet jet;
    jet.value.resize(static_cast<std::size_t>(k));
    if (derivatives) {
        jet.d_arg.resize(static_cast<std::size_t>(k));
        jet.d_mod.resize(static_cast<std::size_t>(k));
    }
    const ThetaArgument a(arg, mod);
    for (int p = 0; p < k; ++p) {
        const ThetaBasisIndex idx(k, p);
        const auto i = static_cast<std::size_t>(p);
        jet.value[i] = theta_degree_k(idx, a, policy);
        if (derivatives) {
            jet.d_arg[i] = theta_degree_k_deriv(idx, a, 1, 0, policy);
            jet.d_mod[i] = theta_degree_k_deriv(idx, a, 0, 1, policy);
        }
    }
    return jet;
}

inline ThetaJet fiber_jet(int k, const KTPoint &u, bool derivatives, const TruncationPolicy &policy = {})
{
    return theta_jet(k, fiber_argument(u), fiber_modulus(u), derivatives, policy);
}

inline ThetaJet base_jet(int k, const KTPoint &u, bool derivatives, const TruncationPolicy &policy = {})
{
    return theta_jet(k, base_argument(u), base_modulus, derivatives, policy);
}

/// theta_KT(u) = theta(z + i x, y + i) theta(y + i t, i).
inline complex theta_kt(const KTPoint &u, const TruncationPolicy &policy = {})
{
    return theta(ThetaArgument(fiber_argument(u), fiber_modulus(u)), policy)
           * theta(ThetaArgument(base_argument(u), base_modulus), policy);
}

inline complex section(const SectionIndex &idx, const KTPoint &u, const TruncationPolicy &policy = {})
{
    const complex fiber = theta_degree_k(ThetaBasisIndex(idx.k(), idx.p()), ThetaArgument(fiber_argument(u), fiber_modulus(u)), policy);
    const complex base = theta_degree_k(ThetaBasisIndex(idx.k(), idx.q()), ThetaArgument(base_argument(u), base_modulus), policy);
    return fiber * base;
}

/// Partials of one section along (x, y, z, t).
struct SectionGradient {
    std::array<complex, 4> d{};

    complex dx() const { return d[axis::x]; }
    complex dy() const { return d[axis::y]; }
    complex dz() const { return d[axis::z]; }
    complex dt() const { return d[axis::t]; }
};

namespace detail
{

// Chain rule for A(z + i x, y + i) * B(y + i t, i).
inline SectionGradient product_gradient(complex a, complex a_arg, complex a_mod, complex b, complex b_arg)
{
    constexpr complex i{0.0, 1.0};
    SectionGradient g;
    g.d[axis::x] = i * a_arg * b;
    g.d[axis::y] = a_mod * b + a * b_arg;
    g.d[axis::z] = a_arg * b;
    g.d[axis::t] = i * a * b_arg;
    return g;
}

} // namespace detail

inline SectionGradient section_gradient(const SectionIndex &idx, const KTPoint &u, const TruncationPolicy &policy = {})
{
    const ThetaArgument fa(fiber_argument(u), fiber_modulus(u));
    const ThetaArgument ba(base_argument(u), base_modulus);
    const ThetaBasisIndex fp(idx.k(), idx.p());
    const ThetaBasisIndex bq(idx.k(), idx.q());
    return detail::product_gradient(theta_degree_k(fp, fa, policy), theta_degree_k_deriv(fp, fa, 1, 0, policy),
                                    theta_degree_k_deriv(fp, fa, 0, 1, policy), theta_degree_k(bq, ba, policy),
                                    theta_degree_k_deriv(bq, ba, 1, 0, policy));
}

/// (zeta . theta_KT)(u) = theta(z + i x + zeta1, y + i) theta(y + i t + zeta2, i).
inline complex zeta_action(const ZetaShift &zeta, const KTPoint &u, const TruncationPolicy &policy = {})
{
    return theta(ThetaArgument(fiber_argument(u) + zeta.zeta1, fiber_modulus(u)), policy)
           * theta(ThetaArgument(base_argument(u) + zeta.zeta2, base_modulus), policy);
}

inline complex product_of_shifts(std::span<const ZetaShift> zetas, const KTPoint &u, const TruncationPolicy &policy = {})
{
    if (zetas.empty()) {
        throw std::invalid_argument("product_of_shifts needs at least one shift");
    }
    complex s1 = 0.0;
    complex s2 = 0.0;
    for (const auto &z : zetas) {
        s1 += z.zeta1;
        s2 += z.zeta2;
    }
    if (std::abs(s1) > 1e-12 || std::abs(s2) > 1e-12) {
        throw ShiftSumNonzero("zeta shifts must sum to zero componentwise");
    }
    complex acc = 1.0;
    for (const auto &z : zetas) {
        acc *= zeta_action(z, u, policy);
    }
    return acc;
}

using KTSample = std::pair<KTPoint, complex>;

/// Least-squares fit of samples against the k^2 sections, in flattened order.
inline SpanFit fit_in_span(std::span<const KTSample> samples, int k, const TruncationPolicy &policy = {})
{
    if (k < 1) {
        throw std::invalid_argument("section degree must be at least 1");
    }
    const auto n = static_cast<Eigen::Index>(samples.size());
    const int dim = k * k;
    Eigen::MatrixXcd a(n, dim);
    Eigen::VectorXcd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto &[u, value] = samples[static_cast<std::size_t>(i)];
        const ThetaJet fiber = fiber_jet(k, u, false, policy);
        const ThetaJet base = base_jet(k, u, false, policy);
        for (int p = 0; p < k; ++p) {
            for (int q = 0; q < k; ++q) {
                a(i, p * k + q) = fiber.value[static_cast<std::size_t>(p)] * base.value[static_cast<std::size_t>(q)];
            }
        }
        b(i) = value;
    }
    return linalg::least_squares(a, b);
}

// ---------------------------------------------------------------------------
// Degree-3 section s = f g vanishing at u and not at v, with
//   f = theta(w1 + alpha) theta(w1 + beta) theta(w1 - alpha - beta)   on the fiber (modulus y + i),
//   g = theta(w2 + gamma) theta(w2 + delta) theta(w2 - gamma - delta) on the base (modulus i).

struct SeparatingSection {
    enum class Branch { base, fiber };

    complex alpha;
    complex beta;
    complex gamma;
    complex delta;
    Branch branch = Branch::base;
    complex value_u;
    complex value_v;
    /// Largest |s| over the probe set, u and v included.
    double scale = 0.0;
    int attempts = 0;

    complex fiber_factor(const KTPoint &w, const TruncationPolicy &policy = {}) const
    {
        const complex arg = fiber_argument(w);
        const complex mod = fiber_modulus(w);
        return theta(ThetaArgument(arg + alpha, mod), policy) * theta(ThetaArgument(arg + beta, mod), policy)
               * theta(ThetaArgument(arg - alpha - beta, mod), policy);
    }

    complex base_factor(const KTPoint &w, const TruncationPolicy &policy = {}) const
    {
        const complex arg = base_argument(w);
        return theta(ThetaArgument(arg + gamma, base_modulus), policy) * theta(ThetaArgument(arg + delta, base_modulus), policy)
               * theta(ThetaArgument(arg - gamma - delta, base_modulus), policy);
    }

    complex evaluate(const KTPoint &w, const TruncationPolicy &policy = {}) const
    {
        return fiber_factor(w, policy) * base_factor(w, policy);
    }
};

struct SeparationOptions {
    std::uint64_t seed = 0x5e9a7a7eULL;
    int attempts = 32;
    int probe_points = 64;
    double vanish_tol = 1e-8;
    double nonvanish_tol = 1e-3;
};

namespace detail
{

inline double circle_distance(double a, double b)
{
    const double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

} // namespace detail

/// Builds s = f g from the injectivity argument: gamma puts the base factor on
/// its zero at u; when v lies over the same base point, alpha does the same on
/// the fiber instead. The remaining shifts are drawn from a seeded stream until
/// s(v) is clearly nonzero relative to the probe-set maximum.
inline SeparatingSection separating_section(const KTPoint &u, const KTPoint &v, const TruncationPolicy &policy = {},
                                            const SeparationOptions &opts = {})
{
    if (quotient_distance(u, v) < 1e-9) {
        throw EquivalentPoints("points coincide on the quotient");
    }
    const KTPoint u0 = reduce(u).point;
    const KTPoint v0 = reduce(v).point;

    Sampler sampler(opts.seed);
    std::vector<KTPoint> probes;
    probes.reserve(static_cast<std::size_t>(opts.probe_points) + 2);
    for (int i = 0; i < opts.probe_points; ++i) {
        probes.push_back(sampler.fundamental_point());
    }
    probes.push_back(u0);
    probes.push_back(v0);

    const complex half{0.5, 0.0};
    const bool same_base = detail::circle_distance(u0.y, v0.y) < 1e-9 && detail::circle_distance(u0.t, v0.t) < 1e-9;

    auto accept = [&](SeparatingSection &s) {
        s.value_u = s.evaluate(u0, policy);
        s.value_v = s.evaluate(v0, policy);
        double scale = 0.0;
        for (const auto &w : probes) {
            scale = std::max(scale, std::abs(s.evaluate(w, policy)));
        }
        s.scale = scale;
        return std::abs(s.value_u) < opts.vanish_tol * scale && std::abs(s.value_v) > opts.nonvanish_tol * scale;
    };

    int used = 0;
    if (!same_base) {
        for (int i = 0; i < opts.attempts; ++i) {
            SeparatingSection s;
            s.branch = SeparatingSection::Branch::base;
            s.gamma = half - base_argument(u0);
            s.delta = sampler.complex_in(0.0, 1.0);
            s.alpha = sampler.complex_in(0.0, 1.0);
            s.beta = sampler.complex_in(0.0, 1.0);
            s.attempts = ++used;
            if (accept(s)) {
                return s;
            }
        }
    }
    for (int i = 0; i < opts.attempts; ++i) {
        SeparatingSection s;
        s.branch = SeparatingSection::Branch::fiber;
        s.alpha = half - fiber_argument(u0);
        s.beta = sampler.complex_in(0.0, 1.0);
        s.gamma = sampler.complex_in(0.0, 1.0);
        s.delta = sampler.complex_in(0.0, 1.0);
        s.attempts = ++used;
        if (accept(s)) {
            return s;
        }
    }
    throw SearchFailed("no separating section found after " + std::to_string(used) + " attempts");
}

} // namespace ktheta

#endif
