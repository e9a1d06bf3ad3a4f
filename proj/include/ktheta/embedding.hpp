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

#ifndef KTHETA_EMBEDDING_HPP
#define KTHETA_EMBEDDING_HPP

// Maps of the manifold into projective space:
//
//   psi'_k(u)  = [theta^p_k(z + i x, y + i)]_p     in CP^{k-1}
//   psi''_k(u) = [theta^q_k(y + i t, i)]_q          in CP^{k-1}
//   phi_k(u)   = [s_{p,q}(u)]_{p k + q}            in CP^{k^2-1}
//
// with phi_k = segre(psi'_k, psi''_k).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "linalg.hpp"
#include "manifold.hpp"
#include "sampling.hpp"
#include "sections.hpp"

namespace ktheta
{

/// Homogeneous coordinates; only the complex line through them is meaningful.
class ProjectivePoint
{
public:
    explicit ProjectivePoint(std::vector<complex> coords) : m_coords(std::move(coords))
    {
        if (m_coords.empty()) {
            throw std::invalid_argument("projective point needs at least one coordinate");
        }
        const double n = norm();
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw AllSectionsVanish("homogeneous coordinates are all zero or not finite");
        }
    }

    std::size_t size() const noexcept { return m_coords.size(); }
    const std::vector<complex> &coords() const noexcept { return m_coords; }
    complex operator[](std::size_t i) const { return m_coords[i]; }

    /// Hermitian norm, scaled by the largest modulus so tiny and huge coordinates
    /// neither underflow nor overflow.
    double norm() const
    {
        double big = 0.0;
        for (const auto &c : m_coords) {
            big = std::max(big, std::abs(c));
        }
        if (!(big > 0.0) || !std::isfinite(big)) {
            return big;
        }
        double acc = 0.0;
        for (const auto &c : m_coords) {
            acc += std::norm(c / big);
        }
        return big * std::sqrt(acc);
    }

    /// Unit lift.
    std::vector<complex> normalized() const
    {
        const double n = norm();
        std::vector<complex> out(m_coords);
        for (auto &c : out) {
            c /= n;
        }
        return out;
    }

    /// Unit lift with the first nonzero coordinate rotated onto the positive reals.
    /// For output only; comparisons go through chordal_distance.
    std::vector<complex> display() const
    {
        auto out = normalized();
        const auto it = std::find_if(out.begin(), out.end(), [](const complex &c) { return std::abs(c) > 0.0; });
        const complex phase = std::conj(*it) / std::abs(*it);
        for (auto &c : out) {
            c *= phase;
        }
        *it = std::abs(*it);
        return out;
    }

private:
    std::vector<complex> m_coords;
};

namespace detail
{

// sin of the angle between unit vectors via Lagrange's identity
// |p|^2 |q|^2 - |<p, q>|^2 = sum_{i<j} |p_i q_j - p_j q_i|^2, which stays accurate
// when the points are close.
inline double unit_chordal(const std::vector<complex> &p, const std::vector<complex> &q)
{
    double acc = 0.0;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            acc += std::norm(p[i] * q[j] - p[j] * q[i]);
        }
    }
    return std::min(1.0, std::sqrt(acc));
}

} // namespace detail

/// sqrt(1 - |<P, Q>|^2 / (|P|^2 |Q|^2)).
inline double chordal_distance(const ProjectivePoint &a, const ProjectivePoint &b)
{
    if (a.size() != b.size()) {
        throw DimensionMismatch("chordal distance between projective spaces of different dimension");
    }
    return detail::unit_chordal(a.normalized(), b.normalized());
}

inline ProjectivePoint psi_prime(int k, const KTPoint &u, const TruncationPolicy &policy = {})
{
    if (k < 1) {
        throw std::invalid_argument("degree must be at least 1");
    }
    return ProjectivePoint(fiber_jet(k, u, false, policy).value);
}

inline ProjectivePoint psi_double_prime(int k, const KTPoint &u, const TruncationPolicy &policy = {})
{
    if (k < 1) {
        throw std::invalid_argument("degree must be at least 1");
    }
    return ProjectivePoint(base_jet(k, u, false, policy).value);
}

/// Segre map [z^p] x [w^q] -> [z^p w^q] in order p * dim(Q) + q.
inline ProjectivePoint segre(const ProjectivePoint &a, const ProjectivePoint &b)
{
    std::vector<complex> out;
    out.reserve(a.size() * b.size());
    for (const auto &zp : a.coords()) {
        for (const auto &wq : b.coords()) {
            out.push_back(zp * wq);
        }
    }
    return ProjectivePoint(std::move(out));
}

inline ProjectivePoint phi(int k, const KTPoint &u, const TruncationPolicy &policy = {})
{
    if (k < 1) {
        throw std::invalid_argument("degree must be at least 1");
    }
    std::vector<complex> out;
    out.reserve(static_cast<std::size_t>(k * k));
    for (int p = 0; p < k; ++p) {
        for (int q = 0; q < k; ++q) {
            out.push_back(section(SectionIndex(k, p, q), u, policy));
        }
    }
    return ProjectivePoint(std::move(out));
}

/// Rows (s, d_x s, d_y s, d_z s, d_t s) over the k^2 sections.
class JacobianMatrix
{
public:
    static constexpr int value_row = 0;

    explicit JacobianMatrix(Eigen::MatrixXcd m) : m_rows(std::move(m))
    {
        if (m_rows.rows() != 5) {
            throw std::invalid_argument("jacobian needs exactly five rows");
        }
        if (!(m_rows.row(value_row).norm() > 0.0)) {
            throw AllSectionsVanish("all sections vanish at this point");
        }
    }

    const Eigen::MatrixXcd &matrix() const noexcept { return m_rows; }
    Eigen::RowVectorXcd values() const { return m_rows.row(value_row); }
    /// Row of partials along axis (axis::x .. axis::t).
    Eigen::RowVectorXcd partial(int ax) const { return m_rows.row(1 + ax); }

    /// Singular values of the realified 5 x 2k^2 matrix, descending.
    std::vector<double> real_singular_values() const { return linalg::singular_values(linalg::realify_rows(m_rows)); }

private:
    Eigen::MatrixXcd m_rows;
};

inline JacobianMatrix jacobian(int k, const KTPoint &u, const TruncationPolicy &policy = {})
{
    if (k < 1) {
        throw std::invalid_argument("degree must be at least 1");
    }
    const ThetaJet fiber = fiber_jet(k, u, true, policy);
    const ThetaJet base = base_jet(k, u, true, policy);
    Eigen::MatrixXcd m(5, k * k);
    for (int p = 0; p < k; ++p) {
        for (int q = 0; q < k; ++q) {
            const auto ip = static_cast<std::size_t>(p);
            const auto iq = static_cast<std::size_t>(q);
            const auto g = detail::product_gradient(fiber.value[ip], fiber.d_arg[ip], fiber.d_mod[ip], base.value[iq], base.d_arg[iq]);
            const int col = p * k + q;
            m(0, col) = fiber.value[ip] * base.value[iq];
            for (int ax = 0; ax < 4; ++ax) {
                m(1 + ax, col) = g.d[static_cast<std::size_t>(ax)];
            }
        }
    }
    return JacobianMatrix(std::move(m));
}

namespace detail
{

// Partials of the unit lift projected off the complex line through the lift,
// i.e. the differential of the map into projective space, as a 4 x N matrix.
inline Eigen::MatrixXcd projective_differential(const Eigen::RowVectorXcd &lift, const Eigen::MatrixXcd &partials)
{
    const double n = lift.norm();
    const Eigen::RowVectorXcd unit = lift / n;
    Eigen::MatrixXcd out(partials.rows(), partials.cols());
    for (Eigen::Index i = 0; i < partials.rows(); ++i) {
        const Eigen::RowVectorXcd row = partials.row(i);
        // <unit, row> = sum conj(unit_j) row_j
        const complex inner = (unit.conjugate().array() * row.array()).sum();
        out.row(i) = (row - inner * unit) / n;
    }
    return out;
}

} // namespace detail

/// Real rank of d(phi_k) at u: count of singular values of the projected
/// differential above tol times the largest.
inline int projective_rank(int k, const KTPoint &u, double tol = 1e-8, const TruncationPolicy &policy = {})
{
    if (!(tol > 0.0)) {
        throw std::invalid_argument("rank tolerance must be positive");
    }
    const JacobianMatrix j = jacobian(k, u, policy);
    const Eigen::MatrixXcd partials = j.matrix().bottomRows(4);
    const Eigen::MatrixXcd diff = detail::projective_differential(j.values(), partials);
    const auto sv = linalg::singular_values(linalg::realify_rows(diff));
    // Unprojected derivative scale; guards against counting rounding noise
    // when the projection annihilates everything (k = 1).
    const double scale = partials.norm() / j.values().norm();
    const double cut = std::max(tol * sv.front(), 1e-12 * scale);
    return static_cast<int>(std::count_if(sv.begin(), sv.end(), [cut](double s) { return s > cut; }));
}

struct InjectivityOptions {
    double min_quotient_distance = 1e-3;
    double pass_threshold = 1e-6;
};

struct InjectivityReport {
    int k = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    double min_image_distance = std::numeric_limits<double>::infinity();
    int witness_i = -1;
    int witness_j = -1;
    KTPoint witness_u;
    KTPoint witness_v;
    double witness_quotient_distance = 0.0;
    long pairs = 0;
    long excluded_pairs = 0;
    bool pass = false;
};

/// Image-separation scan over seeded points of the fundamental domain.
///
/// Pairs closer than min_quotient_distance on the quotient are skipped. The
/// quotient distance is only evaluated for pairs whose image distance would
/// beat the current minimum, which yields the same minimum as checking all
/// pairs. Ties keep the earliest pair in (i, j) order.
inline InjectivityReport injectivity_scan(int k, int n_samples, std::uint64_t seed, const TruncationPolicy &policy = {},
                                          const InjectivityOptions &opts = {})
{
    if (k < 1) {
        throw std::invalid_argument("degree must be at least 1");
    }
    if (n_samples < 2) {
        throw std::invalid_argument("injectivity scan needs at least two samples");
    }
    Sampler sampler(seed);
    std::vector<KTPoint> points;
    std::vector<std::vector<complex>> images;
    points.reserve(static_cast<std::size_t>(n_samples));
    images.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        points.push_back(sampler.fundamental_point());
        images.push_back(phi(k, points.back(), policy).normalized());
    }

    InjectivityReport r;
    r.k = k;
    r.samples = n_samples;
    r.seed = seed;
    for (int i = 0; i < n_samples; ++i) {
        for (int j = i + 1; j < n_samples; ++j) {
            ++r.pairs;
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            const double d = detail::unit_chordal(images[ui], images[uj]);
            if (!(d < r.min_image_distance)) {
                continue;
            }
            const double qd = quotient_distance(points[ui], points[uj]);
            if (qd <= opts.min_quotient_distance) {
                ++r.excluded_pairs;
                continue;
            }
            r.min_image_distance = d;
            r.witness_i = i;
            r.witness_j = j;
            r.witness_u = points[ui];
            r.witness_v = points[uj];
            r.witness_quotient_distance = qd;
        }
    }
    r.pass = r.min_image_distance > opts.pass_threshold;
    return r;
}

} // namespace ktheta

#endif
