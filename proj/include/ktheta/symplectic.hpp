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

#ifndef KTHETA_SYMPLECTIC_HPP
#define KTHETA_SYMPLECTIC_HPP

// Fubini-Study pullbacks and the first Chern class of L.
//
// On C^N \ 0 the Fubini-Study form is (i / 2 pi) d d-bar log |Z|^2, normalized to
// integrate to 1 over a projective line. For any smooth lift F of a map into
// projective space, with D_a the partials of F projected off the line C F and
// divided by |F|, its pullback has coefficients
//
//   W_ab = -(1 / pi) Im <D_b, D_a>,   <v, w> = sum conj(v_j) w_j.

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "embedding.hpp"
#include "errors.hpp"
#include "manifold.hpp"
#include "sections.hpp"

namespace ktheta
{

enum class FormSource { omega_kt, phi, psi_prime, psi_double_prime };

inline std::string_view to_string(FormSource s)
{
    switch (s) {
        case FormSource::omega_kt: return "omega_kt";
        case FormSource::phi: return "phi";
        case FormSource::psi_prime: return "psi_prime";
        case FormSource::psi_double_prime: return "psi_double_prime";
    }
    return "?";
}

inline std::optional<FormSource> parse_form_source(std::string_view s)
{
    for (auto f : {FormSource::omega_kt, FormSource::phi, FormSource::psi_prime, FormSource::psi_double_prime}) {
        if (to_string(f) == s) {
            return f;
        }
    }
    return std::nullopt;
}

struct PullbackForm {
    KTPoint base;
    TwoForm omega;
};

/// Fubini-Study pullback for a lift and its partials (one row per parameter).
inline Eigen::MatrixXd fubini_study_pullback(const Eigen::RowVectorXcd &lift, const Eigen::MatrixXcd &partials)
{
    const Eigen::MatrixXcd d = detail::projective_differential(lift, partials);
    const Eigen::Index n = d.rows();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            const complex inner = (d.row(b).conjugate().array() * d.row(a).array()).sum();
            const double v = -inner.imag() / pi;
            w(a, b) = v;
            w(b, a) = -v;
        }
    }
    return w;
}

namespace detail
{

inline std::pair<Eigen::RowVectorXcd, Eigen::MatrixXcd> lift_and_partials(FormSource src, int k, const KTPoint &u,
                                                                           const TruncationPolicy &policy)
{
    constexpr complex i{0.0, 1.0};
    switch (src) {
        case FormSource::phi: {
            const JacobianMatrix j = jacobian(k, u, policy);
            return {j.values(), j.matrix().bottomRows(4)};
        }
        case FormSource::psi_prime: {
            const ThetaJet f = fiber_jet(k, u, true, policy);
            Eigen::RowVectorXcd lift(k);
            Eigen::MatrixXcd partials = Eigen::MatrixXcd::Zero(4, k);
            for (int p = 0; p < k; ++p) {
                const auto ip = static_cast<std::size_t>(p);
                lift(p) = f.value[ip];
                partials(axis::x, p) = i * f.d_arg[ip];
                partials(axis::y, p) = f.d_mod[ip];
                partials(axis::z, p) = f.d_arg[ip];
            }
            return {lift, partials};
        }
        case FormSource::psi_double_prime: {
            const ThetaJet g = base_jet(k, u, true, policy);
            Eigen::RowVectorXcd lift(k);
            Eigen::MatrixXcd partials = Eigen::MatrixXcd::Zero(4, k);
            for (int q = 0; q < k; ++q) {
                const auto iq = static_cast<std::size_t>(q);
                lift(q) = g.value[iq];
                partials(axis::y, q) = g.d_arg[iq];
                partials(axis::t, q) = i * g.d_arg[iq];
            }
            return {lift, partials};
        }
        case FormSource::omega_kt: break;
    }
    throw std::invalid_argument("omega_kt has no projective lift");
}

} // namespace detail

/// Pullback of the unit-line-normalized Fubini-Study form under phi_k, psi'_k or
/// psi''_k; FormSource::omega_kt returns omega_KT itself for comparison.
inline PullbackForm fs_pullback(FormSource src, int k, const KTPoint &u, const TruncationPolicy &policy = {})
{
    if (src == FormSource::omega_kt) {
        return {u, omega_kt(u)};
    }
    if (k < 1) {
        throw std::invalid_argument("degree must be at least 1");
    }
    const auto [lift, partials] = detail::lift_and_partials(src, k, u, policy);
    if (!(lift.norm() > 0.0)) {
        throw AllSectionsVanish("lift vanishes; cannot pull back the Fubini-Study form");
    }
    const Eigen::Matrix4d w = fubini_study_pullback(lift, partials);
    return {u, TwoForm::from_matrix(w)};
}

/// Integral of the pulled-back form over C through the chart w -> [1 : w] of
/// CP^1, by midpoint rule in v with rho = tan(v) and trapezoid in angle.
/// Equals 1 for the chosen normalization.
inline double fs_line_integral(int radial_nodes = 4096, int angular_nodes = 8)
{
    constexpr complex i{0.0, 1.0};
    const double hv = 0.5 * pi / radial_nodes;
    const double hphi = 2.0 * pi / angular_nodes;
    Eigen::MatrixXcd partials(2, 2);
    partials << 0.0, 1.0, 0.0, i;
    double total = 0.0;
    for (int r = 0; r < radial_nodes; ++r) {
        const double v = (r + 0.5) * hv;
        const double rho = std::tan(v);
        const double jac = rho / (std::cos(v) * std::cos(v));
        double ring = 0.0;
        for (int a = 0; a < angular_nodes; ++a) {
            Eigen::RowVectorXcd lift(2);
            lift << 1.0, std::polar(rho, a * hphi);
            ring += fubini_study_pullback(lift, partials)(0, 1);
        }
        total += ring * hphi * jac * hv;
    }
    return total;
}

/// Coefficients in the left-invariant basis
/// {(dz - x dy)^dx, (dz - x dy)^dy, dx^dy, dy^dt, dx^dt, (dz - x dy)^dt}.
struct LeftInvariantDecomposition {
    double f = 0.0;
    double g = 0.0;
    double h = 0.0;
    double alpha = 0.0;
    double dx_dt = 0.0;
    double theta_dt = 0.0;
};

inline LeftInvariantDecomposition decompose_left_invariant(const PullbackForm &form)
{
    using namespace axis;
    const TwoForm &w = form.omega;
    const double xc = form.base.x;
    LeftInvariantDecomposition d;
    d.f = -w(x, z);
    d.g = -w(y, z);
    d.h = w(x, y) + xc * w(x, z);
    d.theta_dt = w(z, t);
    d.alpha = w(y, t) + xc * w(z, t);
    d.dx_dt = w(x, t);
    return d;
}

/// Inverse of decompose_left_invariant at coordinate x.
inline TwoForm reassemble(const LeftInvariantDecomposition &d, double xc)
{
    using namespace axis;
    TwoForm w;
    w.set(x, y, d.f * xc + d.h);
    w.set(x, z, -d.f);
    w.set(x, t, d.dx_dt);
    w.set(y, z, -d.g);
    w.set(y, t, d.alpha - xc * d.theta_dt);
    w.set(z, t, d.theta_dt);
    return w;
}

inline double pfaffian(const PullbackForm &form)
{
    return pfaffian(form.omega);
}

/// Coefficient of dx^dy^dz^dt in form ^ form.
inline double top_power(const PullbackForm &form)
{
    return 2.0 * pfaffian(form.omega);
}

/// Components (xyz, xyt, xzt, yzt) of d(form) by central differences of step h.
inline std::array<double, 4> exterior_derivative(FormSource src, int k, const KTPoint &u, double h,
                                                 const TruncationPolicy &policy = {})
{
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite-difference step must be positive");
    }
    // partial[a] = d/dx_a of the coefficient matrix.
    std::array<Eigen::Matrix4d, 4> partial;
    for (int a = 0; a < 4; ++a) {
        KTPoint up = u;
        KTPoint dn = u;
        up[a] += h;
        dn[a] -= h;
        partial[static_cast<std::size_t>(a)]
            = (fs_pullback(src, k, up, policy).omega.matrix() - fs_pullback(src, k, dn, policy).omega.matrix()) / (2.0 * h);
    }
    auto component = [&](int a, int b, int c) {
        return partial[static_cast<std::size_t>(a)](b, c) - partial[static_cast<std::size_t>(b)](a, c)
               + partial[static_cast<std::size_t>(c)](a, b);
    };
    using namespace axis;
    return {component(x, y, z), component(x, y, t), component(x, z, t), component(y, z, t)};
}

/// Largest component of d(form), relative to max(1, largest coefficient of the form at u).
inline double exterior_derivative_residual(FormSource src, int k, const KTPoint &u, double h = 1e-4,
                                           const TruncationPolicy &policy = {})
{
    double worst = 0.0;
    for (double c : exterior_derivative(src, k, u, h, policy)) {
        worst = std::max(worst, std::abs(c));
    }
    const double scale = fs_pullback(src, k, u, policy).omega.matrix().cwiseAbs().maxCoeff();
    return worst / std::max(1.0, scale);
}

// ---------------------------------------------------------------------------
// Basis tori of H_2, each spanned by two commuting translations.

enum class TorusId { ca, bd, cb, ad };

inline std::string_view to_string(TorusId id)
{
    switch (id) {
        case TorusId::ca: return "T_ca";
        case TorusId::bd: return "T_bd";
        case TorusId::cb: return "T_cb";
        case TorusId::ad: return "T_ad";
    }
    return "?";
}

inline constexpr std::array<TorusId, 4> all_tori{TorusId::ca, TorusId::bd, TorusId::cb, TorusId::ad};

/// The pair (lambda, mu) of generators spanning the torus T_{lambda mu}.
inline std::pair<GroupWord, GroupWord> torus_generators(TorusId id)
{
    switch (id) {
        case TorusId::ca: return {GroupWord::c(), GroupWord::a()};
        case TorusId::bd: return {GroupWord::b(), GroupWord::d()};
        case TorusId::cb: return {GroupWord::c(), GroupWord::b()};
        case TorusId::ad: return {GroupWord::a(), GroupWord::d()};
    }
    throw std::invalid_argument("unknown torus");
}

class BasisTorus
{
public:
    /// Throws TorusNotClosed when the square would not close up on the quotient:
    /// tori moving along x need an integer y.
    BasisTorus(TorusId id, const KTPoint &base) : m_id(id), m_base(base)
    {
        const auto [d1, d2] = directions();
        if ((d1 == axis::x || d2 == axis::x) && std::abs(base.y - std::round(base.y)) > 1e-12) {
            throw TorusNotClosed(std::string(to_string(id)) + " needs an integer y coordinate at its base point");
        }
    }

    TorusId id() const noexcept { return m_id; }
    const KTPoint &base() const noexcept { return m_base; }

    /// Coordinate axes moved by s1 and s2.
    std::pair<int, int> directions() const
    {
        switch (m_id) {
            case TorusId::ca: return {axis::x, axis::z};
            case TorusId::bd: return {axis::y, axis::t};
            case TorusId::cb: return {axis::y, axis::z};
            case TorusId::ad: return {axis::x, axis::t};
        }
        throw std::invalid_argument("unknown torus");
    }

    KTPoint point(double s1, double s2) const
    {
        const auto [d1, d2] = directions();
        KTPoint u = m_base;
        u[d1] += s1;
        u[d2] += s2;
        return u;
    }

private:
    TorusId m_id;
    KTPoint m_base;
};

/// Oriented (ds1 ^ ds2) integral of the pulled-back form over the torus on a
/// uniform grid x grid periodic trapezoid rule.
inline double integrate_over_torus(FormSource src, int k, const BasisTorus &torus, int grid = 64,
                                   const TruncationPolicy &policy = {})
{
    if (grid < 8) {
        throw std::invalid_argument("torus quadrature grid must be at least 8");
    }
    const auto [d1, d2] = torus.directions();
    double total = 0.0;
    for (int i = 0; i < grid; ++i) {
        double row = 0.0;
        for (int j = 0; j < grid; ++j) {
            const KTPoint u = torus.point(static_cast<double>(i) / grid, static_cast<double>(j) / grid);
            row += fs_pullback(src, k, u, policy).omega(d1, d2);
        }
        total += row;
    }
    return total / (static_cast<double>(grid) * grid);
}

// ---------------------------------------------------------------------------
// Transition functions and Chern cocycles.

/// g_{lambda mu}(u) = e_lambda(u) e_{mu^-1}(mu u).
inline complex transition_function(const GroupWord &lambda, const GroupWord &mu, const KTPoint &u)
{
    return multiplicator(lambda, u) * multiplicator(inverse(mu), act(mu, u));
}

namespace detail
{

// Principal logarithm of g_{lambda mu}(u), taken from the branch functions so
// that large moduli do not overflow.
inline complex log_transition(const GroupWord &lambda, const GroupWord &mu, const KTPoint &u)
{
    const complex l = complex(0.0, 2.0 * pi) * (branch_function(lambda, u) + branch_function(inverse(mu), act(mu, u)));
    double arg = std::remainder(l.imag(), 2.0 * pi);
    if (arg <= -pi) {
        arg += 2.0 * pi;
    }
    return {l.real(), arg};
}

} // namespace detail

/// (1 / 2 pi i)(Log g_{lambda mu} + Log g_{mu nu} - Log g_{lambda nu}) with
/// principal logarithms. Integer valued because g_{lambda mu} g_{mu nu} = g_{lambda nu}.
inline double chern_cocycle(const GroupWord &lambda, const GroupWord &mu, const GroupWord &nu, const KTPoint &u)
{
    const complex s = detail::log_transition(lambda, mu, u) + detail::log_transition(mu, nu, u)
                      - detail::log_transition(lambda, nu, u);
    return (s / complex(0.0, 2.0 * pi)).real();
}

/// Integer 2-cocycle of the automorphy factor in the canonical branch:
/// F_lambda(mu u) + F_mu(u) - F_{lambda mu}(u).
inline double group_cocycle(const GroupWord &lambda, const GroupWord &mu, const KTPoint &u)
{
    return (branch_function(lambda, act(mu, u)) + branch_function(mu, u) - branch_function(compose(lambda, mu), u)).real();
}

namespace detail
{

inline int checked_integer(double v)
{
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) {
        throw std::logic_error("Chern number is not an integer: " + std::to_string(v));
    }
    return static_cast<int>(r);
}

} // namespace detail

/// c1([T_{lambda mu}]) = f_mu(u) + f_lambda(mu u) - f_lambda(u) - f_mu(lambda u),
/// with f_a = -(z + i x), f_b = f_c = 0, f_d = -(y + i t) extended along words.
inline int chern_via_multiplicators(const GroupWord &lambda, const GroupWord &mu, const KTPoint &u)
{
    if (!(compose(lambda, mu) == compose(mu, lambda))) {
        throw NonCommutingPair("torus generators must commute");
    }
    const complex v = branch_function(mu, u) + branch_function(lambda, act(mu, u)) - branch_function(lambda, u)
                      - branch_function(mu, act(lambda, u));
    if (std::abs(v.imag()) > 1e-9) {
        throw std::logic_error("Chern combination has an imaginary part");
    }
    return detail::checked_integer(v.real());
}

inline int chern_via_multiplicators(TorusId id, const KTPoint &u = {})
{
    const auto [lambda, mu] = torus_generators(id);
    return chern_via_multiplicators(lambda, mu, u);
}

} // namespace ktheta

#endif
