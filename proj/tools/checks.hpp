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

#ifndef KTHETA_CHECKS_HPP
#define KTHETA_CHECKS_HPP

// Verification suites behind the command-line tool. Each suite samples its
// inputs from the configured seed, tracks the worst residual and the input
// that produced it, and returns one CheckReport.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <ktheta/ktheta.hpp>

namespace ktheta::checks
{

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int k = 3;
    double epsilon = 1e-14;
    int samples = 100;
    std::uint64_t seed = 42;
    int grid = 64;
    double fd_step = 1e-5;
    std::string format; ///< "json" or "csv"; empty selects the command default
    std::string out;

    void validate() const
    {
        if (k < 1) {
            throw ConfigError("k must be at least 1");
        }
        if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
            throw ConfigError("eps must be positive");
        }
        if (samples < 1) {
            throw ConfigError("samples must be at least 1");
        }
        if (grid < 8) {
            throw ConfigError("grid must be at least 8");
        }
        if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
            throw ConfigError("fd-step must be positive");
        }
        if (!format.empty() && format != "json" && format != "csv") {
            throw ConfigError("format must be json or csv");
        }
    }

    TruncationPolicy policy() const { return {epsilon, 512}; }

    json params() const
    {
        return json{{"k", k}, {"eps", epsilon}, {"samples", samples}, {"seed", seed}, {"grid", grid}, {"fd_step", fd_step}};
    }
};

struct CheckReport {
    std::string check;
    json params = json::object();
    long samples = 0;
    double max_residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
    json witness = nullptr;
    double ms = 0.0;
};

inline json to_json(const CheckReport &r)
{
    // JSON has no infinity; an unbounded residual is written as null.
    auto number = [](double v) -> json { return std::isfinite(v) ? json(v) : json(nullptr); };
    return json{{"check", r.check},       {"params", r.params}, {"samples", r.samples}, {"max_residual", number(r.max_residual)},
                {"threshold", r.threshold}, {"pass", r.pass},     {"witness", r.witness}, {"ms", r.ms}};
}

inline json to_json(const KTPoint &u)
{
    return json{{"x", u.x}, {"y", u.y}, {"z", u.z}, {"t", u.t}};
}

inline json to_json(const GroupWord &w)
{
    return json{{"m", w.m}, {"n", w.n}, {"p", w.p}, {"q", w.q}};
}

inline json to_json(complex c)
{
    return json::array({c.real(), c.imag()});
}

/// Central step for exterior derivatives of 2-forms.
inline constexpr double closedness_step = 1e-4;

/// |a - b| / max(1, |a|, |b|).
inline double rel_residual(complex a, complex b)
{
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Running maximum that remembers its witness. NaN counts as worst.
class Worst
{
public:
    void observe(double r, const std::function<json()> &witness)
    {
        if (std::isnan(r)) {
            r = std::numeric_limits<double>::infinity();
        }
        if (!m_seen || r > m_value) {
            m_value = r;
            m_witness = witness();
            m_seen = true;
        }
    }

    double value() const noexcept { return m_value; }
    const json &witness() const noexcept { return m_witness; }

private:
    double m_value = 0.0;
    json m_witness = nullptr;
    bool m_seen = false;
};

inline CheckReport finish(std::string name, json params, long samples, const Worst &worst, double threshold)
{
    CheckReport r;
    r.check = std::move(name);
    r.params = std::move(params);
    r.samples = samples;
    r.max_residual = worst.value();
    r.threshold = threshold;
    r.pass = worst.value() <= threshold;
    r.witness = worst.witness();
    return r;
}

// ---------------------------------------------------------------------------
// Classical theta.

namespace detail
{

struct ThetaSample {
    complex z;
    complex tau;
};

inline ThetaSample sample_theta(Sampler &s)
{
    ThetaSample t;
    t.z = {s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0)};
    t.tau = {s.uniform(-1.0, 1.0), s.uniform(0.5, 2.0)};
    return t;
}

inline json theta_witness(const ThetaSample &t)
{
    return json{{"z", to_json(t.z)}, {"tau", to_json(t.tau)}};
}

} // namespace detail

inline CheckReport theta_quasi_periodicity(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const auto t = detail::sample_theta(s);
        const complex th = theta(ThetaArgument(t.z, t.tau), pol);
        const complex factor = std::exp(complex(0.0, -2.0 * pi) * t.z);
        const double r = std::max(rel_residual(theta(ThetaArgument(t.z + 1.0, t.tau), pol), th),
                                  rel_residual(theta(ThetaArgument(t.z + t.tau, t.tau), pol), factor * th));
        worst.observe(r, [&] { return detail::theta_witness(t); });
    }
    return finish("theta.quasi_periodicity", cfg.params(), cfg.samples, worst, 1e-10);
}

inline CheckReport theta_tau_shift(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 1);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const auto t = detail::sample_theta(s);
        const double r = rel_residual(theta(ThetaArgument(t.z, t.tau + 1.0), pol), theta(ThetaArgument(t.z, t.tau), pol));
        worst.observe(r, [&] { return detail::theta_witness(t); });
    }
    return finish("theta.tau_shift", cfg.params(), cfg.samples, worst, 1e-10);
}

/// Residual of d_tau theta = (1 / 4 pi i) d_z^2 theta - (1/2) d_z theta.
inline double heat_residual(const ThetaArgument &arg, const TruncationPolicy &pol)
{
    const complex dt = theta_deriv(arg, 0, 1, pol);
    const complex dzz = theta_deriv(arg, 2, 0, pol);
    const complex dz = theta_deriv(arg, 1, 0, pol);
    const complex rhs = dzz / complex(0.0, 4.0 * pi) - 0.5 * dz;
    return rel_residual(dt, rhs);
}

inline CheckReport theta_heat_equation(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 2);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const auto t = detail::sample_theta(s);
        worst.observe(heat_residual(ThetaArgument(t.z, t.tau), pol), [&] { return detail::theta_witness(t); });
    }
    return finish("theta.heat_equation", cfg.params(), cfg.samples, worst, 1e-8);
}

inline CheckReport theta_zero_locus(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 3);
    Worst worst;
    long count = 0;
    for (int i = 0; i < cfg.samples; ++i) {
        const complex tau = i == 0 ? complex(0.0, 1.0) : complex(s.uniform(-0.5, 0.5), s.uniform(0.8, 1.5));
        const complex zero = theta_zero(tau);
        for (int m = -1; m <= 1; ++m) {
            for (int n = -1; n <= 1; ++n) {
                const complex z = zero + static_cast<double>(m) + static_cast<double>(n) * tau;
                worst.observe(std::abs(theta(ThetaArgument(z, tau), pol)), [&] { return json{{"z", to_json(z)}, {"tau", to_json(tau)}}; });
                ++count;
            }
        }
    }
    return finish("theta.zero_locus", cfg.params(), count, worst, 1e-10);
}

/// Relative error of the analytic first partials against central differences.
inline double theta_fd_residual(const ThetaArgument &arg, double h, const TruncationPolicy &pol)
{
    const complex z = arg.z();
    const complex tau = arg.tau();
    const complex dz = theta_deriv(arg, 1, 0, pol);
    const complex dtau = theta_deriv(arg, 0, 1, pol);
    const complex fd_z = (theta(ThetaArgument(z + h, tau), pol) - theta(ThetaArgument(z - h, tau), pol)) / (2.0 * h);
    const complex fd_tau = (theta(ThetaArgument(z, tau + h), pol) - theta(ThetaArgument(z, tau - h), pol)) / (2.0 * h);
    const double err = std::hypot(std::abs(dz - fd_z), std::abs(dtau - fd_tau));
    return err / std::max(1.0, std::hypot(std::abs(dz), std::abs(dtau)));
}

inline CheckReport theta_derivatives(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 4);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const auto t = detail::sample_theta(s);
        worst.observe(theta_fd_residual(ThetaArgument(t.z, t.tau), cfg.fd_step, pol), [&] { return detail::theta_witness(t); });
    }
    return finish("theta.derivatives_fd", cfg.params(), cfg.samples, worst, 1e-6);
}

/// Numerical rank of the k x 8k matrix [theta^p_k(z_j, tau)].
inline int degree_k_rank(int k, complex tau, Sampler &s, const TruncationPolicy &pol, double rel_tol = 1e-8)
{
    Eigen::MatrixXcd m(k, 8 * k);
    for (int j = 0; j < 8 * k; ++j) {
        const complex z = s.uniform() + s.uniform() * tau;
        for (int p = 0; p < k; ++p) {
            m(p, j) = theta_degree_k(ThetaBasisIndex(k, p), ThetaArgument(z, tau), pol);
        }
    }
    return linalg::numerical_rank(linalg::singular_values(m), rel_tol);
}

inline CheckReport theta_degree_k_dimension(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 5);
    Worst worst;
    const complex tau{0.2, 1.0};
    for (int k = 1; k <= 5; ++k) {
        const int rank = degree_k_rank(k, tau, s, pol);
        worst.observe(std::abs(rank - k), [&] { return json{{"k", k}, {"rank", rank}}; });
    }
    return finish("theta.degree_k_dimension", cfg.params(), 5, worst, 0.0);
}

// ---------------------------------------------------------------------------
// Lattice and multiplicators.

inline CheckReport manifold_group_laws(const RunConfig &cfg)
{
    Sampler s(cfg.seed + 10);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const GroupWord w1 = s.word(3);
        const GroupWord w2 = s.word(3);
        const KTPoint u = s.box_point(-3.0, 3.0);
        const double d1 = euclidean_distance(act(compose(w1, w2), u), act(w1, act(w2, u)));
        const double d2 = euclidean_distance(act(compose(w1, inverse(w1)), u), u);
        const double word_err = compose(w1, inverse(w1)) == GroupWord::identity() ? 0.0 : 1.0;
        worst.observe(std::max({d1, d2, word_err}), [&] { return json{{"w1", to_json(w1)}, {"w2", to_json(w2)}, {"u", to_json(u)}}; });
    }
    return finish("manifold.group_laws", cfg.params(), cfg.samples, worst, 1e-12);
}

inline CheckReport manifold_reduce_roundtrip(const RunConfig &cfg)
{
    Sampler s(cfg.seed + 11);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const GroupWord w = s.word(3);
        const KTPoint u0 = s.fundamental_point();
        const KTPoint u = act(w, u0);
        const Reduction r = reduce(u);
        const double d = std::max(euclidean_distance(act(r.word, r.point), u), euclidean_distance(r.point, u0));
        const double word_err = r.word == w ? 0.0 : 1.0;
        worst.observe(std::max(d, word_err), [&] { return json{{"w", to_json(w)}, {"u0", to_json(u0)}}; });
    }
    return finish("manifold.reduce_roundtrip", cfg.params(), cfg.samples, worst, 1e-12);
}

inline CheckReport manifold_cocycle(const RunConfig &cfg)
{
    Sampler s(cfg.seed + 12);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const GroupWord w1 = s.word(2);
        const GroupWord w2 = s.word(2);
        const KTPoint u = s.box_point(-3.0, 3.0);
        worst.observe(cocycle_residual(w1, w2, u), [&] { return json{{"w1", to_json(w1)}, {"w2", to_json(w2)}, {"u", to_json(u)}}; });
    }
    return finish("manifold.cocycle", cfg.params(), cfg.samples, worst, 1e-12);
}

inline CheckReport manifold_omega_kt(const RunConfig &cfg)
{
    Sampler s(cfg.seed + 13);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const KTPoint u = s.box_point(-3.0, 3.0);
        const double r = std::max(std::abs(pfaffian(omega_kt(u)) - 1.0), exterior_derivative_residual(FormSource::omega_kt, 1, u, closedness_step));
        worst.observe(r, [&] { return to_json(u); });
    }
    return finish("manifold.omega_kt", cfg.params(), cfg.samples, worst, 1e-10);
}

// ---------------------------------------------------------------------------
// Sections.

inline const std::array<std::pair<const char *, GroupWord>, 4> &generators()
{
    static const std::array<std::pair<const char *, GroupWord>, 4> g{
        {{"a", GroupWord::a()}, {"b", GroupWord::b()}, {"c", GroupWord::c()}, {"d", GroupWord::d()}}};
    return g;
}

inline CheckReport sections_tensor_power(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 20);
    Worst worst;
    const int k = cfg.k;
    for (int i = 0; i < cfg.samples; ++i) {
        const KTPoint u = s.fundamental_point();
        const int p = static_cast<int>(s.integer(0, k - 1));
        const int q = static_cast<int>(s.integer(0, k - 1));
        const SectionIndex idx(k, p, q);
        const complex su = section(idx, u, pol);
        for (const auto &[name, g] : generators()) {
            const complex e = std::pow(multiplicator(g, u), k);
            const double r = rel_residual(section(idx, act(g, u), pol), e * su);
            worst.observe(r, [&] { return json{{"generator", name}, {"p", p}, {"q", q}, {"u", to_json(u)}}; });
        }
    }
    return finish("sections.tensor_power_law", cfg.params(), 4L * cfg.samples, worst, 1e-10);
}

/// Numerical rank of the (8k^2) x k^2 matrix of all sections at seeded points.
inline int section_span_rank(int k, Sampler &s, const TruncationPolicy &pol, double rel_tol = 1e-8)
{
    const int dim = k * k;
    Eigen::MatrixXcd m(8 * dim, dim);
    for (int j = 0; j < 8 * dim; ++j) {
        const ProjectivePoint f = phi(k, s.fundamental_point(), pol);
        for (int c = 0; c < dim; ++c) {
            m(j, c) = f[static_cast<std::size_t>(c)];
        }
    }
    return linalg::numerical_rank(linalg::singular_values(m), rel_tol);
}

inline CheckReport sections_dimension(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 21);
    Worst worst;
    for (int k = 1; k <= 3; ++k) {
        const int rank = section_span_rank(k, s, pol);
        worst.observe(std::abs(rank - k * k), [&] { return json{{"k", k}, {"rank", rank}}; });
    }
    return finish("sections.dimension", cfg.params(), 3, worst, 0.0);
}

/// Fourth-order five-point derivative of f at u along axis.
template <class F>
auto five_point(const F &f, const KTPoint &u, int axis, double h)
{
    auto at = [&](double step) {
        KTPoint v = u;
        v[axis] += step;
        return f(v);
    };
    auto a = at(2.0 * h);
    const auto b = at(h);
    const auto c = at(-h);
    const auto d = at(-2.0 * h);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = (-a[i] + 8.0 * b[i] - 8.0 * c[i] + d[i]) / (12.0 * h);
    }
    return a;
}

/// Step of the five-point stencil used for the holomorphicity identities.
inline constexpr double holomorphic_step = 1e-3;

/// Worst of |(d_z + i d_x) s| over the k^2 sections and |(d_y + i d_t) theta^q_k(y + i t, i)|
/// over the base factors, by five-point differences of values, each relative
/// to max(1, |d s|).
inline double cauchy_riemann_residual(int k, const KTPoint &u, double h, const TruncationPolicy &pol)
{
    constexpr complex i{0.0, 1.0};
    auto sections = [&](const KTPoint &v) { return phi(k, v, pol).coords(); };
    auto base = [&](const KTPoint &v) { return base_jet(k, v, false, pol).value; };
    const auto dz = five_point(sections, u, axis::z, h);
    const auto dx = five_point(sections, u, axis::x, h);
    const auto dy = five_point(base, u, axis::y, h);
    const auto dt = five_point(base, u, axis::t, h);
    double worst = 0.0;
    for (std::size_t c = 0; c < dz.size(); ++c) {
        worst = std::max(worst, std::abs(dz[c] + i * dx[c]) / std::max(1.0, std::abs(dz[c])));
    }
    for (std::size_t q = 0; q < dy.size(); ++q) {
        worst = std::max(worst, std::abs(dy[q] + i * dt[q]) / std::max(1.0, std::abs(dy[q])));
    }
    return worst;
}

inline CheckReport sections_cauchy_riemann(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 22);
    Worst worst;
    for (int n = 0; n < cfg.samples; ++n) {
        const KTPoint u = s.fundamental_point();
        worst.observe(cauchy_riemann_residual(cfg.k, u, holomorphic_step, pol), [&] { return to_json(u); });
    }
    json params = cfg.params();
    params["h"] = holomorphic_step;
    return finish("sections.cauchy_riemann", params, cfg.samples, worst, 1e-10);
}

/// Largest relative gap between the analytic Jacobian rows and central
/// differences of phi's homogeneous coordinates with step h.
inline double jacobian_fd_residual(int k, const KTPoint &u, double h, const TruncationPolicy &pol)
{
    const JacobianMatrix j = jacobian(k, u, pol);
    double worst = 0.0;
    for (int ax = 0; ax < 4; ++ax) {
        KTPoint up = u;
        KTPoint dn = u;
        up[ax] += h;
        dn[ax] -= h;
        const auto fp = phi(k, up, pol).coords();
        const auto fm = phi(k, dn, pol).coords();
        const Eigen::RowVectorXcd an = j.partial(ax);
        double err = 0.0;
        for (Eigen::Index c = 0; c < an.size(); ++c) {
            const auto ic = static_cast<std::size_t>(c);
            err = std::max(err, std::abs(an(c) - (fp[ic] - fm[ic]) / (2.0 * h)));
        }
        worst = std::max(worst, err / std::max(1.0, an.cwiseAbs().maxCoeff()));
    }
    return worst;
}

inline CheckReport embedding_jacobian_fd(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 34);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const KTPoint u = s.fundamental_point();
        worst.observe(jacobian_fd_residual(cfg.k, u, cfg.fd_step, pol), [&] { return to_json(u); });
    }
    return finish("embedding.jacobian_fd", cfg.params(), cfg.samples, worst, 1e-6);
}

/// Fit of prod_i (zeta_i . theta_KT) against the k^2 sections, sampled on the
/// slice y = y0. Coefficients are constant on each slice; they vary with y0
/// through the fiber modulus.
inline double fiberwise_product_fit(int k, std::span<const ZetaShift> zetas, double y0, Sampler &s, const TruncationPolicy &pol,
                                    int n_samples = 64)
{
    std::vector<KTSample> samples;
    samples.reserve(static_cast<std::size_t>(n_samples));
    for (int j = 0; j < n_samples; ++j) {
        KTPoint u = s.fundamental_point();
        u.y = y0;
        samples.emplace_back(u, product_of_shifts(zetas, u, pol));
    }
    return fit_in_span(samples, k, pol).residual;
}

inline std::vector<ZetaShift> zero_sum_shifts(int k, Sampler &s)
{
    std::vector<ZetaShift> z(static_cast<std::size_t>(k));
    ZetaShift total{};
    for (int i = 0; i + 1 < k; ++i) {
        z[static_cast<std::size_t>(i)] = {s.complex_in(-0.5, 0.5), s.complex_in(-0.5, 0.5)};
        total.zeta1 += z[static_cast<std::size_t>(i)].zeta1;
        total.zeta2 += z[static_cast<std::size_t>(i)].zeta2;
    }
    z.back() = {-total.zeta1, -total.zeta2};
    return z;
}

inline CheckReport sections_product_closure_fiberwise(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 23);
    Worst worst;
    const int k = std::max(cfg.k, 2);
    const int trials = std::min(cfg.samples, 50);
    for (int i = 0; i < trials; ++i) {
        const auto zetas = zero_sum_shifts(k, s);
        const double y0 = s.uniform();
        worst.observe(fiberwise_product_fit(k, zetas, y0, s, pol), [&] { return json{{"trial", i}, {"y", y0}}; });
    }
    json params = cfg.params();
    params["k"] = k;
    return finish("sections.product_closure_fiberwise", params, trials, worst, 1e-8);
}

inline CheckReport sections_separating(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 24);
    Worst worst;
    const int pairs = cfg.samples;
    for (int i = 0; i < pairs; ++i) {
        const KTPoint u = s.fundamental_point();
        KTPoint v = s.fundamental_point();
        if (i % 4 == 0) {
            v.y = u.y;
            v.t = u.t;
        }
        double r = std::numeric_limits<double>::infinity();
        try {
            const auto sec = separating_section(u, v, pol);
            r = std::max(std::abs(sec.value_u) / (1e-8 * sec.scale), 1e-3 * sec.scale / std::abs(sec.value_v));
        } catch (const SearchFailed &) {
        }
        worst.observe(r, [&] { return json{{"u", to_json(u)}, {"v", to_json(v)}}; });
    }
    return finish("sections.separating", cfg.params(), pairs, worst, 1.0);
}

// ---------------------------------------------------------------------------
// Embedding.

inline CheckReport embedding_well_defined(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 30);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const KTPoint u = s.fundamental_point();
        const ProjectivePoint fu = phi(cfg.k, u, pol);
        for (const auto &[name, g] : generators()) {
            worst.observe(chordal_distance(phi(cfg.k, act(g, u), pol), fu), [&] { return json{{"generator", name}, {"u", to_json(u)}}; });
        }
    }
    return finish("embedding.well_defined", cfg.params(), 4L * cfg.samples, worst, 1e-10);
}

inline CheckReport embedding_segre(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 31);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const KTPoint u = s.fundamental_point();
        const double d = chordal_distance(phi(cfg.k, u, pol), segre(psi_prime(cfg.k, u, pol), psi_double_prime(cfg.k, u, pol)));
        worst.observe(d, [&] { return to_json(u); });
    }
    return finish("embedding.segre_factorization", cfg.params(), cfg.samples, worst, 1e-12);
}

inline int expected_rank(int k)
{
    return k == 1 ? 0 : 4;
}

inline CheckReport embedding_immersion(const RunConfig &cfg, double tol = 1e-6)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 32);
    Worst worst;
    long bad = 0;
    int lo = 4;
    int hi = 0;
    for (int i = 0; i < cfg.samples; ++i) {
        const KTPoint u = s.fundamental_point();
        const int r = projective_rank(cfg.k, u, tol, pol);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        if (r != expected_rank(cfg.k)) {
            ++bad;
            worst.observe(static_cast<double>(bad), [&] { return json{{"u", to_json(u)}, {"rank", r}}; });
        }
    }
    json params = cfg.params();
    params["tol"] = tol;
    params["expected_rank"] = expected_rank(cfg.k);
    params["min_rank"] = lo;
    params["max_rank"] = hi;
    params["diagnostic"] = cfg.k == 2;
    return finish("embedding.projective_rank", params, cfg.samples, worst, 0.0);
}

inline CheckReport embedding_injectivity(const RunConfig &cfg)
{
    const auto rep = injectivity_scan(cfg.k, std::max(cfg.samples, 2), cfg.seed + 33, cfg.policy());
    json params = cfg.params();
    params["metric"] = "reciprocal of the minimum image chordal distance";
    params["min_image_distance"] = rep.min_image_distance;
    params["min_quotient_distance"] = 1e-3;
    params["pairs"] = rep.pairs;
    Worst worst;
    worst.observe(1.0 / rep.min_image_distance, [&] {
        return json{{"i", rep.witness_i}, {"j", rep.witness_j}, {"u", to_json(rep.witness_u)}, {"v", to_json(rep.witness_v)},
                    {"quotient_distance", rep.witness_quotient_distance}};
    });
    return finish("embedding.injectivity", params, rep.samples, worst, 1e6);
}

// ---------------------------------------------------------------------------
// Symplectic.

inline CheckReport symplectic_fs_normalization(const RunConfig &cfg)
{
    Worst worst;
    const double v = fs_line_integral();
    worst.observe(std::abs(v - 1.0), [&] { return json{{"integral", v}}; });
    return finish("symplectic.fs_normalization", cfg.params(), 1, worst, 1e-6);
}

inline CheckReport symplectic_nondegeneracy(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 40);
    Worst worst;
    int sign = 0;
    double min_abs = std::numeric_limits<double>::infinity();
    for (int i = 0; i < cfg.samples; ++i) {
        const KTPoint u = s.fundamental_point();
        const double pf = pfaffian(fs_pullback(FormSource::phi, cfg.k, u, pol));
        const int sg = pf > 0.0 ? 1 : (pf < 0.0 ? -1 : 0);
        if (sign == 0) {
            sign = sg;
        }
        min_abs = std::min(min_abs, std::abs(pf));
        const double r = (sg == 0 || sg != sign) ? std::numeric_limits<double>::infinity() : 1e-8 / std::abs(pf);
        worst.observe(r, [&] { return json{{"u", to_json(u)}, {"pfaffian", pf}}; });
    }
    json params = cfg.params();
    params["metric"] = "1e-8 / |Pf|, infinite on a sign change";
    params["min_abs_pfaffian"] = min_abs;
    params["sign"] = sign;
    return finish("symplectic.nondegeneracy", params, cfg.samples, worst, 1.0);
}

inline CheckReport symplectic_structure(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 41);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const KTPoint u = s.fundamental_point();
        const PullbackForm fp = fs_pullback(FormSource::psi_prime, cfg.k, u, pol);
        const PullbackForm fpp = fs_pullback(FormSource::psi_double_prime, cfg.k, u, pol);
        const PullbackForm total{u, fp.omega + fpp.omega};
        const auto dp = decompose_left_invariant(fp);
        const auto dpp = decompose_left_invariant(fpp);
        const auto dt = decompose_left_invariant(total);
        double r = 0.0;
        // psi'': only dy^dt.
        r = std::max({r, std::abs(dpp.f), std::abs(dpp.g), std::abs(dpp.h), std::abs(dpp.dx_dt), std::abs(dpp.theta_dt)});
        // psi': nothing along dt.
        r = std::max({r, std::abs(dp.alpha), std::abs(dp.dx_dt), std::abs(dp.theta_dt)});
        // (form)^2 = 2 alpha beta dx^dy^dz^dt with beta = f.
        r = std::max(r, std::abs(top_power(total) - 2.0 * dt.alpha * dt.f) / std::max(1.0, std::abs(top_power(total))));
        if (!(dp.f > 0.0) || !(dpp.alpha > 0.0)) {
            r = std::numeric_limits<double>::infinity();
        }
        worst.observe(r, [&] { return json{{"u", to_json(u)}, {"f", dp.f}, {"alpha", dpp.alpha}}; });
    }
    return finish("symplectic.structure", cfg.params(), cfg.samples, worst, 1e-8);
}

inline CheckReport symplectic_additivity(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 42);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const KTPoint u = s.fundamental_point();
        const Eigen::Matrix4d diff = fs_pullback(FormSource::phi, cfg.k, u, pol).omega.matrix()
                                     - fs_pullback(FormSource::psi_prime, cfg.k, u, pol).omega.matrix()
                                     - fs_pullback(FormSource::psi_double_prime, cfg.k, u, pol).omega.matrix();
        worst.observe(diff.cwiseAbs().maxCoeff(), [&] { return to_json(u); });
    }
    return finish("symplectic.additivity", cfg.params(), cfg.samples, worst, 1e-10);
}

inline CheckReport symplectic_closedness(const RunConfig &cfg)
{
    const auto pol = cfg.policy();
    Sampler s(cfg.seed + 43);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const KTPoint u = s.fundamental_point();
        worst.observe(exterior_derivative_residual(FormSource::phi, cfg.k, u, closedness_step, pol), [&] { return to_json(u); });
    }
    json params = cfg.params();
    params["h"] = closedness_step;
    return finish("symplectic.closedness", params, cfg.samples, worst, 1e-6);
}

/// Torus base point used by the integration suites; y = 0 closes the a-direction.
inline KTPoint torus_base()
{
    return {0.125, 0.0, 0.25, 0.375};
}

inline CheckReport symplectic_torus_integral(const RunConfig &cfg, TorusId id)
{
    const auto pol = cfg.policy();
    const BasisTorus torus(id, torus_base());
    const double coarse = integrate_over_torus(FormSource::phi, cfg.k, torus, cfg.grid, pol);
    const double fine = integrate_over_torus(FormSource::phi, cfg.k, torus, 2 * cfg.grid, pol);
    const int c1 = chern_via_multiplicators(id);
    const double expected = static_cast<double>(cfg.k * c1);
    Worst worst;
    const double r = std::max(std::abs(std::abs(coarse) - expected), 1e4 * std::abs(coarse - fine));
    worst.observe(r, [&] { return json{{"integral", coarse}, {"integral_fine", fine}}; });
    json params = cfg.params();
    params["torus"] = std::string(to_string(id));
    params["integral"] = coarse;
    params["integral_fine_grid"] = fine;
    params["expected_magnitude"] = expected;
    params["metric"] = "max(||I| - k c1|, 1e4 |I(grid) - I(2 grid)|)";
    return finish(std::string("symplectic.torus_integral.") + std::string(to_string(id)), params, 1L * cfg.grid * cfg.grid, worst, 1e-4);
}

inline int expected_chern(TorusId id)
{
    return (id == TorusId::ca || id == TorusId::bd) ? 1 : 0;
}

inline CheckReport symplectic_chern(const RunConfig &cfg, TorusId id)
{
    Sampler s(cfg.seed + 44);
    Worst worst;
    int value = 0;
    for (int i = 0; i < cfg.samples; ++i) {
        const KTPoint u = s.box_point(-2.0, 2.0);
        value = chern_via_multiplicators(torus_generators(id).first, torus_generators(id).second, u);
        worst.observe(std::abs(value - expected_chern(id)), [&] { return json{{"u", to_json(u)}, {"value", value}}; });
    }
    json params = cfg.params();
    params["torus"] = std::string(to_string(id));
    params["value"] = value;
    params["expected"] = expected_chern(id);
    return finish(std::string("symplectic.chern.") + std::string(to_string(id)), params, cfg.samples, worst, 0.0);
}

inline CheckReport symplectic_cocycle_integrality(const RunConfig &cfg)
{
    Sampler s(cfg.seed + 45);
    Worst worst;
    for (int i = 0; i < cfg.samples; ++i) {
        const GroupWord w1 = s.word(2);
        const GroupWord w2 = s.word(2);
        const GroupWord w3 = s.word(2);
        const KTPoint u = s.box_point(-1.0, 1.0);
        const double c = chern_cocycle(w1, w2, w3, u);
        worst.observe(std::abs(c - std::round(c)), [&] { return json{{"w1", to_json(w1)}, {"w2", to_json(w2)}, {"w3", to_json(w3)}, {"u", to_json(u)}}; });
    }
    return finish("symplectic.chern_cocycle_integrality", cfg.params(), cfg.samples, worst, 1e-10);
}

// ---------------------------------------------------------------------------

struct Suite {
    std::string name;
    std::function<CheckReport(const RunConfig &)> run;
};

/// Every suite run by `check`, in report order.
inline std::vector<Suite> registered_suites()
{
    std::vector<Suite> s{
        {"theta.quasi_periodicity", theta_quasi_periodicity},
        {"theta.tau_shift", theta_tau_shift},
        {"theta.heat_equation", theta_heat_equation},
        {"theta.zero_locus", theta_zero_locus},
        {"theta.derivatives_fd", theta_derivatives},
        {"theta.degree_k_dimension", theta_degree_k_dimension},
        {"manifold.group_laws", manifold_group_laws},
        {"manifold.reduce_roundtrip", manifold_reduce_roundtrip},
        {"manifold.cocycle", manifold_cocycle},
        {"manifold.omega_kt", manifold_omega_kt},
        {"sections.tensor_power_law", sections_tensor_power},
        {"sections.dimension", sections_dimension},
        {"sections.cauchy_riemann", sections_cauchy_riemann},
        {"sections.product_closure_fiberwise", sections_product_closure_fiberwise},
        {"sections.separating", sections_separating},
        {"embedding.well_defined", embedding_well_defined},
        {"embedding.segre_factorization", embedding_segre},
        {"embedding.projective_rank", [](const RunConfig &c) { return embedding_immersion(c); }},
        {"embedding.jacobian_fd", embedding_jacobian_fd},
        {"embedding.injectivity", embedding_injectivity},
        {"symplectic.fs_normalization", symplectic_fs_normalization},
        {"symplectic.nondegeneracy", symplectic_nondegeneracy},
        {"symplectic.structure", symplectic_structure},
        {"symplectic.additivity", symplectic_additivity},
        {"symplectic.closedness", symplectic_closedness},
    };
    for (TorusId id : all_tori) {
        s.push_back({std::string("symplectic.torus_integral.") + std::string(to_string(id)),
                     [id](const RunConfig &c) { return symplectic_torus_integral(c, id); }});
    }
    for (TorusId id : all_tori) {
        s.push_back({std::string("symplectic.chern.") + std::string(to_string(id)),
                     [id](const RunConfig &c) { return symplectic_chern(c, id); }});
    }
    s.push_back({"symplectic.chern_cocycle_integrality", symplectic_cocycle_integrality});
    return s;
}

/// Runs one suite with timing. A library exception fails the suite and is
/// recorded as its witness rather than aborting the run.
inline CheckReport run_suite(const Suite &suite, const RunConfig &cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    CheckReport r;
    try {
        r = suite.run(cfg);
    } catch (const std::exception &e) {
        r.check = suite.name;
        r.params = cfg.params();
        r.max_residual = std::numeric_limits<double>::infinity();
        r.threshold = 0.0;
        r.pass = false;
        r.witness = json{{"error", e.what()}};
    }
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

} // namespace ktheta::checks

#endif
