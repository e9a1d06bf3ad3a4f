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

#ifndef KTHETA_THETA_HPP
#define KTHETA_THETA_HPP

// Classical theta function
//
//   theta(z, tau) = sum_{k in Z} exp(2 pi i k z + pi i k (k - 1) tau),
//
// which satisfies theta(z + 1) = theta(z), theta(z + tau) = exp(-2 pi i z) theta(z),
// and the degree-k basis
//
//   theta^p_k(z, tau) = sum_{m in Z} exp(2 pi i (p + m k) z + 2 pi i tau (m p + k m (m - 1) / 2)),
//
// p = 0..k-1, obtained from a_{n+k} = exp(2 pi i n tau) a_n with a_p = 1.
// Each element obeys theta^p_k(z + tau) = exp(-2 pi i k z) theta^p_k(z).

#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "linalg.hpp"
#include "series.hpp"

namespace ktheta
{

/// A point (z, tau) with Im(tau) > 0.
class ThetaArgument
{
public:
    ThetaArgument(complex z, complex tau) : m_z(z), m_tau(tau)
    {
        if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
            throw std::invalid_argument("theta modulus must lie in the upper half-plane");
        }
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("theta argument must be finite");
        }
    }

    complex z() const noexcept { return m_z; }
    complex tau() const noexcept { return m_tau; }

private:
    complex m_z;
    complex m_tau;
};

/// Label of theta^p_k, 0 <= p < k.
class ThetaBasisIndex
{
public:
    ThetaBasisIndex(int k, int p) : m_k(k), m_p(p)
    {
        if (k < 1) {
            throw std::invalid_argument("theta degree must be at least 1");
        }
        if (p < 0 || p >= k) {
            throw std::invalid_argument("theta basis label must satisfy 0 <= p < k");
        }
    }

    int k() const noexcept { return m_k; }
    int p() const noexcept { return m_p; }

private:
    int m_k;
    int m_p;
};

namespace detail
{

inline constexpr complex two_pi_i{0.0, 2.0 * pi};
inline constexpr complex pi_i{0.0, pi};

inline GaussianSeries degree_k_series(const ThetaBasisIndex &idx, const ThetaArgument &arg, int z_order, int tau_order)
{
    if (z_order < 0 || tau_order < 0) {
        throw std::invalid_argument("derivative orders must be non-negative");
    }
    const double k = idx.k();
    const double p = idx.p();
    const complex z = arg.z();
    const complex tau = arg.tau();

    GaussianSeries s;
    s.quad = pi_i * k * tau;
    s.lin = two_pi_i * k * z + two_pi_i * p * tau - pi_i * k * tau;
    s.offset = two_pi_i * p * z;

    // d/dz brings down 2 pi i (p + m k); d/dtau brings down pi i k m^2 + (2 pi i p - pi i k) m.
    const auto dz = IndexPolynomial::linear(two_pi_i * p, two_pi_i * k);
    const auto dtau = IndexPolynomial::quadratic(0.0, two_pi_i * p - pi_i * k, pi_i * k);
    for (int j = 0; j < z_order; ++j) {
        s.weight = s.weight * dz;
    }
    for (int j = 0; j < tau_order; ++j) {
        s.weight = s.weight * dtau;
    }
    return s;
}

} // namespace detail

/// Certified bound on the discarded part of the theta series beyond |k| = N.
inline double tail_bound(const ThetaArgument &arg, int N)
{
    return detail::tail_bound(detail::degree_k_series(ThetaBasisIndex(1, 0), arg, 0, 0), N);
}

/// Half-width N actually used for theta at this argument.
inline int theta_half_width(const ThetaArgument &arg, const TruncationPolicy &policy = {})
{
    return detail::select_half_width(detail::degree_k_series(ThetaBasisIndex(1, 0), arg, 0, 0), policy);
}

inline complex theta_degree_k_deriv(const ThetaBasisIndex &idx, const ThetaArgument &arg, int z_order, int tau_order,
                                    const TruncationPolicy &policy = {})
{
    return detail::certified_sum(detail::degree_k_series(idx, arg, z_order, tau_order), policy);
}

inline complex theta_degree_k(const ThetaBasisIndex &idx, const ThetaArgument &arg, const TruncationPolicy &policy = {})
{
    return theta_degree_k_deriv(idx, arg, 0, 0, policy);
}

/// Mixed partial d^{z_order}/dz d^{tau_order}/dtau of theta, by termwise differentiation.
inline complex theta_deriv(const ThetaArgument &arg, int z_order, int tau_order, const TruncationPolicy &policy = {})
{
    return theta_degree_k_deriv(ThetaBasisIndex(1, 0), arg, z_order, tau_order, policy);
}

inline complex theta(const ThetaArgument &arg, const TruncationPolicy &policy = {})
{
    return theta_deriv(arg, 0, 0, policy);
}

/// The zero of theta in the fundamental parallelogram of Z + tau Z.
///
/// The terms k and 1 - k cancel pairwise at z = 1/2, so the zero is returned
/// analytically; the series is evaluated there only as a sanity check.
inline complex theta_zero(complex tau)
{
    const complex zero{0.5, 0.0};
    const ThetaArgument arg(zero, tau);
    const double scale = std::abs(theta(ThetaArgument(0.0, tau))) + 1.0;
    if (std::abs(theta(arg)) > 1e-10 * scale) {
        throw std::logic_error("theta does not vanish at z = 1/2; truncation is broken");
    }
    return zero;
}

/// prod_i theta(z + shift_i, tau). The shifts must sum to zero, which makes the
/// product a theta function of degree shifts.size().
inline complex classical_product(std::span<const complex> shifts, const ThetaArgument &arg,
                                 const TruncationPolicy &policy = {})
{
    if (shifts.empty()) {
        throw std::invalid_argument("classical_product needs at least one shift");
    }
    const complex total = std::accumulate(shifts.begin(), shifts.end(), complex{0.0});
    if (std::abs(total) > 1e-12) {
        throw ShiftSumNonzero("shifts sum to a nonzero value");
    }
    complex acc = 1.0;
    for (const auto &shift : shifts) {
        acc *= theta(ThetaArgument(arg.z() + shift, arg.tau()), policy);
    }
    return acc;
}

/// Least-squares fit of samples (z_j, f(z_j)) against {theta^p_k(., tau)}_{p<k}.
inline SpanFit fit_in_classical_span(std::span<const std::pair<complex, complex>> samples, int k, complex tau,
                                     const TruncationPolicy &policy = {})
{
    if (k < 1) {
        throw std::invalid_argument("theta degree must be at least 1");
    }
    const auto n = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXcd a(n, k);
    Eigen::VectorXcd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto &[z, value] = samples[static_cast<std::size_t>(i)];
        for (int p = 0; p < k; ++p) {
            a(i, p) = theta_degree_k(ThetaBasisIndex(k, p), ThetaArgument(z, tau), policy);
        }
        b(i) = value;
    }
    return linalg::least_squares(a, b);
}

} // namespace ktheta

#endif
