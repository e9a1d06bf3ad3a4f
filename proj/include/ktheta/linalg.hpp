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

#ifndef KTHETA_LINALG_HPP
#define KTHETA_LINALG_HPP

#include <algorithm>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace ktheta
{

/// Result of a least-squares membership test.
struct SpanFit {
    std::vector<std::complex<double>> coefficients;
    /// Relative l2 misfit ||A c - b|| / ||b||.
    double residual = 0.0;
    double condition = 0.0;
};

namespace linalg
{

// Singular values, descending.
inline std::vector<double> singular_values(const Eigen::MatrixXcd &a)
{
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto &s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

inline std::vector<double> singular_values(const Eigen::MatrixXd &a)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto &s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

/// Number of singular values above rel_tol times the largest.
inline int numerical_rank(const std::vector<double> &sv, double rel_tol)
{
    if (sv.empty() || !(sv.front() > 0.0)) {
        return 0;
    }
    const double cut = rel_tol * sv.front();
    return static_cast<int>(std::count_if(sv.begin(), sv.end(), [cut](double s) { return s > cut; }));
}

// Real view of a complex matrix: each complex row becomes [Re | Im].
inline Eigen::MatrixXd realify_rows(const Eigen::MatrixXcd &a)
{
    Eigen::MatrixXd r(a.rows(), 2 * a.cols());
    r.leftCols(a.cols()) = a.real();
    r.rightCols(a.cols()) = a.imag();
    return r;
}

inline SpanFit least_squares(const Eigen::MatrixXcd &a, const Eigen::VectorXcd &b, double max_condition = 1e12)
{
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    const double smin = s.size() > 0 ? s(s.size() - 1) : 0.0;
    const double cond = (s.size() > 0 && smin > 0.0) ? s(0) / smin : std::numeric_limits<double>::infinity();
    if (!(cond <= max_condition)) {
        throw IllConditioned("sample matrix condition number " + std::to_string(cond) + " exceeds "
                             + std::to_string(max_condition));
    }
    const Eigen::VectorXcd x = svd.solve(b);
    SpanFit fit;
    fit.coefficients.assign(x.data(), x.data() + x.size());
    const double bn = b.norm();
    fit.residual = bn > 0.0 ? (a * x - b).norm() / bn : 0.0;
    fit.condition = cond;
    return fit;
}

} // namespace linalg

} // namespace ktheta

#endif
