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

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include <ktheta/ktheta.hpp>

#include "checks.hpp"
#include "oracles.hpp"

using namespace ktheta;
using oracle::I;

namespace
{

const std::array<GroupWord, 4> gens{GroupWord::a(), GroupWord::b(), GroupWord::c(), GroupWord::d()};

} // namespace

TEST(SectionIndex, Validation)
{
    EXPECT_THROW(SectionIndex(0, 0, 0), std::invalid_argument);
    EXPECT_THROW(SectionIndex(2, 2, 0), std::invalid_argument);
    EXPECT_THROW(SectionIndex(2, 0, -1), std::invalid_argument);
    EXPECT_EQ(SectionIndex(3, 2, 1).flat(), 7);
}

TEST(ThetaKT, ValueAtOrigin)
{
    const complex t0 = oracle::theta(0.0, I);
    const complex v = theta_kt({0, 0, 0, 0});
    EXPECT_LT(std::abs(v - t0 * t0), 1e-13);
    EXPECT_NEAR(v.real(), 4.01495, 1e-5);
}

TEST(ThetaKT, VanishesOverTheFiberZero)
{
    Sampler s(100);
    for (int i = 0; i < 50; ++i) {
        const double y = s.uniform();
        const double t = s.uniform();
        // z + i x = 1/2 and z + i x = 1/2 + (y + i).
        EXPECT_LT(std::abs(theta_kt({0.0, y, 0.5, t})), 1e-12);
        EXPECT_LT(std::abs(theta_kt({1.0, y, 0.5 + y, t})), 1e-10);
    }
}

TEST(ThetaKT, QuasiPeriodicUnderA)
{
    Sampler s(101);
    for (int i = 0; i < 200; ++i) {
        const KTPoint u = s.fundamental_point();
        const complex factor = std::exp(-2.0 * oracle::pi * I * complex(u.z, u.x));
        EXPECT_LT(oracle::rel(theta_kt({u.x + 1.0, u.y, u.z + u.y, u.t}), factor * theta_kt(u)), 1e-10);
    }
}

TEST(Section, DegreeOneIsThetaKT)
{
    Sampler s(102);
    for (int i = 0; i < 50; ++i) {
        const KTPoint u = s.box_point(-1, 2);
        EXPECT_LT(oracle::rel(section(SectionIndex(1, 0, 0), u), theta_kt(u)), 1e-14);
    }
}

TEST(Section, MatchesOracle)
{
    Sampler s(103);
    for (int k = 1; k <= 3; ++k) {
        for (int i = 0; i < 30; ++i) {
            const KTPoint u = s.fundamental_point();
            for (int p = 0; p < k; ++p) {
                for (int q = 0; q < k; ++q) {
                    EXPECT_LT(oracle::rel(section(SectionIndex(k, p, q), u), oracle::section(k, p, q, u)), 1e-12);
                }
            }
        }
    }
}

TEST(Section, TensorPowerLaw)
{
    const double eps = 1e-14;
    Sampler s(104);
    for (int k = 1; k <= 3; ++k) {
        for (const auto &g : gens) {
            for (int i = 0; i < 200; ++i) {
                const KTPoint u = s.fundamental_point();
                const SectionIndex idx(k, static_cast<int>(s.integer(0, k - 1)), static_cast<int>(s.integer(0, k - 1)));
                const complex su = section(idx, u);
                const complex ek = std::pow(multiplicator(g, u), k);
                const double bound = 1e-10 * (1.0 + std::abs(ek)) * std::abs(su) + 10.0 * eps;
                EXPECT_LE(std::abs(section(idx, act(g, u)) - ek * su), bound) << "k " << k << " g " << g << " u " << u;
            }
        }
    }
}

TEST(Section, SpanRankIsKSquared)
{
    Sampler s(105);
    for (int k = 1; k <= 3; ++k) {
        EXPECT_EQ(checks::section_span_rank(k, s, {}), k * k) << "k " << k;
    }
}

TEST(SectionGradient, MatchesCentralDifferencesOfOracle)
{
    const double h = 1e-5;
    Sampler s(106);
    for (int i = 0; i < 100; ++i) {
        const KTPoint u = s.fundamental_point();
        const int p = static_cast<int>(s.integer(0, 2));
        const int q = static_cast<int>(s.integer(0, 2));
        const SectionGradient g = section_gradient(SectionIndex(3, p, q), u);
        auto f = [&](const KTPoint &v) { return std::vector<complex>{oracle::section(3, p, q, v)}; };
        for (int ax = 0; ax < 4; ++ax) {
            const complex fd = oracle::central_difference(f, u, ax, h)[0];
            EXPECT_LT(oracle::rel(g.d[static_cast<std::size_t>(ax)], fd), 1e-6) << "axis " << ax << " u " << u;
        }
    }
}

TEST(SectionGradient, CauchyRiemannFromValues)
{
    const double h = 1e-3;
    Sampler s(107);
    for (int i = 0; i < 50; ++i) {
        const KTPoint u = s.fundamental_point();
        for (int p = 0; p < 3; ++p) {
            for (int q = 0; q < 3; ++q) {
                // (d_z + i d_x) s: both directions act on the fiber argument z + i x.
                auto along = [&](complex dir) {
                    return oracle::five_point(
                        [&](complex w) { return oracle::section(3, p, q, {u.x + w.imag(), u.y, u.z + w.real(), u.t}); }, 0.0, dir, h);
                };
                const complex dz = along(1.0);
                const complex dx = along(I);
                EXPECT_LT(std::abs(dz + I * dx) / std::max(1.0, std::abs(dz)), 1e-10);
            }
            // (d_y + i d_t) theta(y + i t, i) = 0.
            auto base = [&](complex w) { return oracle::theta(complex(u.y + w.real(), u.t + w.imag()), I); };
            const complex dy = oracle::five_point(base, 0.0, 1.0, h);
            const complex dt = oracle::five_point(base, 0.0, I, h);
            EXPECT_LT(std::abs(dy + I * dt) / std::max(1.0, std::abs(dy)), 1e-10);
        }
        EXPECT_LT(checks::cauchy_riemann_residual(3, u, checks::holomorphic_step, {}), 1e-10);
    }
}

TEST(ZetaAction, Examples)
{
    Sampler s(108);
    for (int i = 0; i < 50; ++i) {
        const KTPoint u = s.fundamental_point();
        EXPECT_EQ(zeta_action({0.0, 0.0}, u), theta_kt(u));
        EXPECT_LT(oracle::rel(zeta_action({1.0, 0.0}, u), theta_kt(u)), 1e-12);
        EXPECT_LT(oracle::rel(zeta_action({0.0, 1.0}, u), theta_kt(u)), 1e-12);
        EXPECT_LT(std::abs(zeta_action({0.5 - complex(u.z, u.x), 0.0}, u)), 1e-12);
    }
}

TEST(ProductOfShifts, ZeroShiftsGiveThetaKTCubed)
{
    const std::vector<ZetaShift> zetas(3, ZetaShift{0.0, 0.0});
    Sampler s(109);
    for (int i = 0; i < 20; ++i) {
        const KTPoint u = s.fundamental_point();
        const complex t = theta_kt(u);
        EXPECT_LT(oracle::rel(product_of_shifts(zetas, u), t * t * t), 1e-13);
    }
}

TEST(ProductOfShifts, SatisfiesTensorPowerLaw)
{
    Sampler s(110);
    for (int k = 2; k <= 3; ++k) {
        const auto zetas = checks::zero_sum_shifts(k, s);
        for (int i = 0; i < 50; ++i) {
            const KTPoint u = s.fundamental_point();
            for (const auto &g : gens) {
                const complex ek = std::pow(multiplicator(g, u), k);
                EXPECT_LT(oracle::rel(product_of_shifts(zetas, act(g, u)), ek * product_of_shifts(zetas, u)), 1e-10);
            }
        }
    }
}

TEST(ProductOfShifts, FitsTheSpanOnEachFiberSlice)
{
    Sampler s(111);
    for (int k = 2; k <= 3; ++k) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto zetas = checks::zero_sum_shifts(k, s);
            EXPECT_LT(checks::fiberwise_product_fit(k, zetas, s.uniform(), s, {}), 1e-8);
        }
        const std::vector<ZetaShift> zero(static_cast<std::size_t>(k), ZetaShift{0.0, 0.0});
        EXPECT_LT(checks::fiberwise_product_fit(k, zero, 0.3, s, {}), 1e-8);
    }
}

TEST(ProductOfShifts, DoesNotFitConstantCoefficientsAcrossFibers)
{
    // Coefficients in the fiber basis depend on the modulus y + i, so one
    // coefficient vector cannot serve all of the manifold.
    Sampler s(112);
    const std::vector<ZetaShift> zero(3, ZetaShift{0.0, 0.0});
    std::vector<KTSample> samples;
    for (int j = 0; j < 64; ++j) {
        const KTPoint u = s.fundamental_point();
        samples.emplace_back(u, product_of_shifts(zero, u));
    }
    EXPECT_GT(fit_in_span(samples, 3).residual, 1e-4);
}

TEST(ProductOfShifts, NonzeroSumIsRejected)
{
    const std::vector<ZetaShift> zetas{{0.1, 0.0}, {-0.1, 0.2}};
    EXPECT_THROW(product_of_shifts(zetas, {0.1, 0.2, 0.3, 0.4}), ShiftSumNonzero);
}

TEST(FitInSpan, SectionItselfGivesUnitCoefficients)
{
    Sampler s(113);
    const int k = 3;
    for (int flat = 0; flat < k * k; ++flat) {
        const SectionIndex idx(k, flat / k, flat % k);
        std::vector<KTSample> samples;
        for (int j = 0; j < 64; ++j) {
            const KTPoint u = s.fundamental_point();
            samples.emplace_back(u, section(idx, u));
        }
        const SpanFit fit = fit_in_span(samples, k);
        EXPECT_LT(fit.residual, 1e-12);
        for (int c = 0; c < k * k; ++c) {
            EXPECT_LT(std::abs(fit.coefficients[static_cast<std::size_t>(c)] - (c == flat ? 1.0 : 0.0)), 1e-10);
        }
    }
}

TEST(FitInSpan, NonMemberIsRejected)
{
    Sampler s(114);
    std::vector<KTSample> samples;
    for (int j = 0; j < 64; ++j) {
        const KTPoint u = s.fundamental_point();
        samples.emplace_back(u, std::exp(u.x));
    }
    EXPECT_GT(fit_in_span(samples, 3).residual, 0.1);
}

TEST(SeparatingSection, BaseBranch)
{
    const KTPoint u{0.3, 0.2, 0.6, 0.1};
    const KTPoint v{0.3, 0.7, 0.6, 0.45};
    const auto sec = separating_section(u, v);
    EXPECT_EQ(sec.branch, SeparatingSection::Branch::base);
    EXPECT_LT(std::abs(sec.gamma - (0.5 - complex(u.y, u.t))), 1e-15);
    EXPECT_LT(std::abs(sec.value_u), 1e-8 * sec.scale);
    EXPECT_GT(std::abs(sec.value_v), 1e-3 * sec.scale);
    EXPECT_LT(std::abs(sec.evaluate(u)), 1e-8 * sec.scale);
}

TEST(SeparatingSection, FiberBranchWhenBasePointsCoincide)
{
    const KTPoint u{0.3, 0.2, 0.6, 0.1};
    const KTPoint v{0.8, 0.2, 0.1, 0.1};
    const auto sec = separating_section(u, v);
    EXPECT_EQ(sec.branch, SeparatingSection::Branch::fiber);
    EXPECT_LT(std::abs(sec.alpha - (0.5 - complex(u.z, u.x))), 1e-15);
    EXPECT_LT(std::abs(sec.value_u), 1e-8 * sec.scale);
    EXPECT_GT(std::abs(sec.value_v), 1e-3 * sec.scale);
}

TEST(SeparatingSection, EquivalentPointsAreRejected)
{
    const KTPoint u{0.3, 0.2, 0.6, 0.1};
    EXPECT_THROW(separating_section(u, act(GroupWord{1, -1, 2, 1}, u)), EquivalentPoints);
    EXPECT_THROW(separating_section(u, u), EquivalentPoints);
}

TEST(SeparatingSection, TransformsLikeADegreeThreeSection)
{
    const KTPoint u{0.3, 0.2, 0.6, 0.1};
    const KTPoint v{0.3, 0.7, 0.6, 0.45};
    const auto sec = separating_section(u, v);
    Sampler s(115);
    for (int i = 0; i < 20; ++i) {
        const KTPoint w = s.fundamental_point();
        for (const auto &g : gens) {
            const complex e3 = std::pow(multiplicator(g, w), 3);
            EXPECT_LT(oracle::rel(sec.evaluate(act(g, w)), e3 * sec.evaluate(w)), 1e-9);
        }
    }
}

TEST(SeparatingSection, RandomPairsIncludingSharedBase)
{
    Sampler s(116);
    for (int i = 0; i < 100; ++i) {
        const KTPoint u = s.fundamental_point();
        KTPoint v = s.fundamental_point();
        if (i < 25) {
            // Same base point modulo the lattice.
            v.y = u.y + static_cast<double>(s.integer(-1, 1));
            v.t = u.t + static_cast<double>(s.integer(-1, 1));
        }
        const auto sec = separating_section(u, v);
        EXPECT_LT(std::abs(sec.value_u), 1e-8 * sec.scale) << u << ' ' << v;
        EXPECT_GT(std::abs(sec.value_v), 1e-3 * sec.scale) << u << ' ' << v;
        if (i < 25) {
            EXPECT_EQ(sec.branch, SeparatingSection::Branch::fiber);
        }
    }
}
