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

TEST(FubiniStudy, LineIntegralIsOne)
{
    EXPECT_NEAR(fs_line_integral(), 1.0, 1e-6);
}

TEST(FubiniStudy, AffineChartDensity)
{
    // Lift (1, w) with w = x + i y: W_xy = 1 / (pi (1 + |w|^2)^2).
    Sampler s(300);
    for (int i = 0; i < 50; ++i) {
        const complex w = s.complex_in(-3, 3);
        Eigen::RowVectorXcd lift(2);
        lift << 1.0, w;
        Eigen::MatrixXcd partials(2, 2);
        partials << 0.0, 1.0, 0.0, I;
        const Eigen::MatrixXd W = fubini_study_pullback(lift, partials);
        const double expect = 1.0 / (oracle::pi * std::pow(1.0 + std::norm(w), 2));
        EXPECT_NEAR(W(0, 1), expect, 1e-14);
        EXPECT_EQ(W(1, 0), -W(0, 1));
    }
}

TEST(FubiniStudy, MatchesFiniteDifferenceOracle)
{
    Sampler s(301);
    for (int i = 0; i < 50; ++i) {
        const KTPoint u = s.fundamental_point();
        const Eigen::Matrix4d w = fs_pullback(FormSource::phi, 3, u).omega.matrix();
        const Eigen::Matrix4d ref = oracle::phi_pullback_fd(3, u);
        EXPECT_LT((w - ref).cwiseAbs().maxCoeff() / std::max(1.0, ref.cwiseAbs().maxCoeff()), 1e-6) << u;
    }
}

TEST(FubiniStudy, ExactlyAntisymmetricAndFinite)
{
    Sampler s(302);
    for (int i = 0; i < 10000; ++i) {
        const Eigen::Matrix4d w = fs_pullback(FormSource::phi, 3, s.fundamental_point()).omega.matrix();
        ASSERT_EQ((w + w.transpose()).cwiseAbs().maxCoeff(), 0.0);
        ASSERT_TRUE(w.allFinite());
    }
}

TEST(FubiniStudy, InvariantUnderTheLattice)
{
    Sampler s(303);
    for (int i = 0; i < 50; ++i) {
        const KTPoint u = s.fundamental_point();
        for (const auto &g : gens) {
            // g is affine; pull the form at g u back by its linear part.
            Eigen::Matrix4d L = Eigen::Matrix4d::Identity();
            if (g == GroupWord::a()) {
                L(axis::z, axis::y) = 1.0;
            }
            const Eigen::Matrix4d at_gu = fs_pullback(FormSource::phi, 3, act(g, u)).omega.matrix();
            const Eigen::Matrix4d at_u = fs_pullback(FormSource::phi, 3, u).omega.matrix();
            const Eigen::Matrix4d pulled = L.transpose() * at_gu * L;
            EXPECT_LT((pulled - at_u).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, at_u.cwiseAbs().maxCoeff()));
        }
    }
}

TEST(FubiniStudy, SourceParsing)
{
    for (auto f : {FormSource::omega_kt, FormSource::phi, FormSource::psi_prime, FormSource::psi_double_prime}) {
        EXPECT_EQ(parse_form_source(to_string(f)), f);
    }
    EXPECT_FALSE(parse_form_source("nope").has_value());
}

TEST(Decomposition, OmegaKT)
{
    Sampler s(304);
    for (int i = 0; i < 20; ++i) {
        const KTPoint u = s.box_point(-2, 2);
        const auto d = decompose_left_invariant(fs_pullback(FormSource::omega_kt, 1, u));
        EXPECT_EQ(d.f, 1.0);
        EXPECT_EQ(d.alpha, 1.0);
        EXPECT_EQ(d.g, 0.0);
        EXPECT_NEAR(d.h, 0.0, 1e-15);
        EXPECT_EQ(d.dx_dt, 0.0);
        EXPECT_EQ(d.theta_dt, 0.0);
    }
}

TEST(Decomposition, RoundTrip)
{
    Sampler s(305);
    for (int i = 0; i < 100; ++i) {
        const KTPoint u = s.fundamental_point();
        const PullbackForm w = fs_pullback(FormSource::phi, 3, u);
        const TwoForm back = reassemble(decompose_left_invariant(w), u.x);
        EXPECT_LT((back.matrix() - w.omega.matrix()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Structure, PsiDoublePrimeIsPureDyDt)
{
    Sampler s(306);
    double min_alpha = 1e300;
    for (int i = 0; i < 1000; ++i) {
        const KTPoint u = s.fundamental_point();
        const TwoForm &w = fs_pullback(FormSource::psi_double_prime, 3, u).omega;
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) {
                if (a == axis::y && b == axis::t) {
                    continue;
                }
                EXPECT_LT(std::abs(w(a, b)), 1e-10);
            }
        }
        min_alpha = std::min(min_alpha, w(axis::y, axis::t));
    }
    EXPECT_GT(min_alpha, 1e-3);
}

TEST(Structure, PsiPrimeHasNoDtComponents)
{
    Sampler s(307);
    double min_f = 1e300;
    for (int i = 0; i < 1000; ++i) {
        const KTPoint u = s.fundamental_point();
        const PullbackForm w = fs_pullback(FormSource::psi_prime, 3, u);
        const auto d = decompose_left_invariant(w);
        EXPECT_LT(std::abs(d.alpha), 1e-10);
        EXPECT_LT(std::abs(d.dx_dt), 1e-10);
        EXPECT_LT(std::abs(d.theta_dt), 1e-10);
        min_f = std::min(min_f, d.f);
    }
    EXPECT_GT(min_f, 1e-3);
}

TEST(Structure, Additivity)
{
    Sampler s(308);
    for (int k = 1; k <= 3; ++k) {
        for (int i = 0; i < 100; ++i) {
            const KTPoint u = s.fundamental_point();
            const Eigen::Matrix4d diff = fs_pullback(FormSource::phi, k, u).omega.matrix()
                                         - fs_pullback(FormSource::psi_prime, k, u).omega.matrix()
                                         - fs_pullback(FormSource::psi_double_prime, k, u).omega.matrix();
            EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(Structure, TopPowerIsTwoAlphaBeta)
{
    Sampler s(309);
    for (int i = 0; i < 200; ++i) {
        const KTPoint u = s.fundamental_point();
        const PullbackForm w = fs_pullback(FormSource::phi, 3, u);
        const auto d = decompose_left_invariant(w);
        const double beta = decompose_left_invariant(fs_pullback(FormSource::psi_prime, 3, u)).f;
        EXPECT_NEAR(d.f, beta, 1e-10);
        EXPECT_LT(std::abs(top_power(w) - 2.0 * d.alpha * beta) / std::max(1.0, std::abs(top_power(w))), 1e-8);
    }
}

TEST(Pfaffian, SquaresToDeterminant)
{
    Sampler s(310);
    for (int i = 0; i < 100; ++i) {
        const PullbackForm w = fs_pullback(FormSource::phi, 3, s.fundamental_point());
        const double pf = pfaffian(w);
        EXPECT_NEAR(pf * pf, w.omega.matrix().determinant(), 1e-12 * std::max(1.0, pf * pf));
    }
}

TEST(Pfaffian, NondegenerateWithConstantSign)
{
    Sampler s(311);
    int sign = 0;
    double min_abs = 1e300;
    for (int i = 0; i < 10000; ++i) {
        const double pf = pfaffian(fs_pullback(FormSource::phi, 3, s.fundamental_point()));
        const int sg = pf > 0 ? 1 : -1;
        if (sign == 0) {
            sign = sg;
        }
        ASSERT_EQ(sg, sign);
        min_abs = std::min(min_abs, std::abs(pf));
    }
    EXPECT_GT(min_abs, 1e-8);
}

TEST(Closedness, OmegaKTIsClosed)
{
    Sampler s(312);
    for (int i = 0; i < 50; ++i) {
        EXPECT_LT(exterior_derivative_residual(FormSource::omega_kt, 1, s.box_point(-3, 3), 1e-4), 1e-10);
    }
}

TEST(Closedness, PhiPullbackIsClosed)
{
    Sampler s(313);
    for (int i = 0; i < 100; ++i) {
        EXPECT_LT(exterior_derivative_residual(FormSource::phi, 3, s.fundamental_point(), 1e-4), 1e-6);
    }
}

TEST(Closedness, ResidualScalesQuadraticallyInStep)
{
    Sampler s(314);
    for (int i = 0; i < 10; ++i) {
        const KTPoint u = s.fundamental_point();
        const double r1 = exterior_derivative_residual(FormSource::phi, 3, u, 1e-2);
        const double r2 = exterior_derivative_residual(FormSource::phi, 3, u, 5e-3);
        EXPECT_GT(r1 / r2, 3.5) << u;
        EXPECT_LT(r1 / r2, 4.5) << u;
    }
}

TEST(Closedness, ComponentsOfAClosedAffineForm)
{
    EXPECT_THROW(exterior_derivative(FormSource::phi, 3, {0, 0, 0, 0}, 0.0), std::invalid_argument);
    for (double c : exterior_derivative(FormSource::omega_kt, 1, {0.3, 0.2, 0.1, 0.0}, 1e-3)) {
        EXPECT_LT(std::abs(c), 1e-12);
    }
}

TEST(BasisTorus, ClosureAndParametrization)
{
    EXPECT_THROW(BasisTorus(TorusId::ca, {0.0, 0.5, 0.0, 0.0}), TorusNotClosed);
    EXPECT_THROW(BasisTorus(TorusId::ad, {0.0, 0.5, 0.0, 0.0}), TorusNotClosed);
    EXPECT_NO_THROW(BasisTorus(TorusId::bd, {0.0, 0.5, 0.0, 0.0}));
    EXPECT_NO_THROW(BasisTorus(TorusId::cb, {0.0, 0.5, 0.0, 0.0}));
    const KTPoint b{0.1, 0.0, 0.2, 0.3};
    EXPECT_EQ(BasisTorus(TorusId::ca, b).point(0.5, 0.25), (KTPoint{0.6, 0.0, 0.45, 0.3}));
    EXPECT_EQ(BasisTorus(TorusId::bd, b).point(0.5, 0.25), (KTPoint{0.1, 0.5, 0.2, 0.55}));
    EXPECT_EQ(BasisTorus(TorusId::cb, b).point(0.5, 0.25), (KTPoint{0.1, 0.5, 0.45, 0.3}));
    EXPECT_EQ(BasisTorus(TorusId::ad, b).point(0.5, 0.25), (KTPoint{0.6, 0.0, 0.2, 0.55}));
    // The edges are identified by the torus generators.
    for (TorusId id : all_tori) {
        const BasisTorus t(id, b);
        const auto [g1, g2] = torus_generators(id);
        for (double s : {0.0, 0.3, 0.7}) {
            EXPECT_LT(quotient_distance(t.point(1.0, s), t.point(0.0, s)), 1e-12);
            EXPECT_LT(quotient_distance(t.point(s, 1.0), t.point(s, 0.0)), 1e-12);
        }
        EXPECT_EQ(compose(g1, g2), compose(g2, g1));
    }
}

TEST(TorusIntegral, OmegaKT)
{
    const KTPoint base{0.0, 0.0, 0.0, 0.0};
    EXPECT_NEAR(integrate_over_torus(FormSource::omega_kt, 1, BasisTorus(TorusId::ca, base)), -1.0, 1e-12);
    EXPECT_NEAR(integrate_over_torus(FormSource::omega_kt, 1, BasisTorus(TorusId::bd, base)), 1.0, 1e-12);
    EXPECT_NEAR(integrate_over_torus(FormSource::omega_kt, 1, BasisTorus(TorusId::cb, base)), 0.0, 1e-12);
    EXPECT_NEAR(integrate_over_torus(FormSource::omega_kt, 1, BasisTorus(TorusId::ad, base)), 0.0, 1e-12);
    EXPECT_THROW(integrate_over_torus(FormSource::omega_kt, 1, BasisTorus(TorusId::ca, base), 4), std::invalid_argument);
}

TEST(TorusIntegral, PhiThreeReproducesKTimesChernNumbers)
{
    const KTPoint base = checks::torus_base();
    const double expected[] = {3.0, 3.0, 0.0, 0.0};
    int i = 0;
    for (TorusId id : all_tori) {
        const BasisTorus t(id, base);
        const double i64 = integrate_over_torus(FormSource::phi, 3, t, 64);
        const double i128 = integrate_over_torus(FormSource::phi, 3, t, 128);
        if (expected[i] > 0) {
            EXPECT_NEAR(std::abs(i64), expected[i], 1e-4) << to_string(id);
        } else {
            EXPECT_NEAR(i64, 0.0, 1e-6) << to_string(id);
        }
        EXPECT_LT(std::abs(i64 - i128), 1e-8) << to_string(id);
        ++i;
    }
}

TEST(TorusIntegral, IndependentOfBasePoint)
{
    for (const KTPoint &base : {KTPoint{0.0, 0.0, 0.0, 0.0}, KTPoint{0.7, 1.0, 0.3, 0.9}}) {
        EXPECT_NEAR(integrate_over_torus(FormSource::phi, 2, BasisTorus(TorusId::ca, base), 48), -2.0, 1e-6);
        EXPECT_NEAR(integrate_over_torus(FormSource::phi, 2, BasisTorus(TorusId::bd, base), 48), 2.0, 1e-6);
    }
}

TEST(TorusIntegral, FactorMapsSplitTheClass)
{
    const KTPoint base = checks::torus_base();
    EXPECT_NEAR(std::abs(integrate_over_torus(FormSource::psi_prime, 3, BasisTorus(TorusId::ca, base))), 3.0, 1e-6);
    EXPECT_NEAR(integrate_over_torus(FormSource::psi_prime, 3, BasisTorus(TorusId::bd, base)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(integrate_over_torus(FormSource::psi_double_prime, 3, BasisTorus(TorusId::bd, base))), 3.0, 1e-6);
    EXPECT_NEAR(integrate_over_torus(FormSource::psi_double_prime, 3, BasisTorus(TorusId::ca, base)), 0.0, 1e-10);
}

TEST(Transition, Examples)
{
    Sampler s(315);
    for (int i = 0; i < 20; ++i) {
        EXPECT_EQ(transition_function(GroupWord::identity(), GroupWord::identity(), s.box_point(-2, 2)), complex(1.0));
    }
    const complex g = transition_function(GroupWord::a(), GroupWord::identity(), {0.5, 0.0, 0.25, 0.0});
    EXPECT_NEAR(g.real(), 0.0, 1e-12);
    EXPECT_NEAR(g.imag(), -std::exp(oracle::pi), 1e-12);
}

TEST(Transition, MultiplicativeConsistency)
{
    Sampler s(316);
    for (int i = 0; i < 200; ++i) {
        const GroupWord l = s.word(2), m = s.word(2), n = s.word(2);
        const KTPoint u = s.box_point(-1, 1);
        const complex lhs = transition_function(l, m, u) * transition_function(m, n, u);
        EXPECT_LT(oracle::rel(lhs, transition_function(l, n, u)), 1e-10);
    }
}

TEST(ChernCocycle, IdentityTripleIsZero)
{
    const auto e = GroupWord::identity();
    EXPECT_EQ(chern_cocycle(e, e, e, {0.3, 0.1, 0.4, 0.1}), 0.0);
}

TEST(ChernCocycle, IntegerValued)
{
    Sampler s(317);
    for (int i = 0; i < 200; ++i) {
        const GroupWord l = s.word(2), m = s.word(2), n = s.word(2);
        const double c = chern_cocycle(l, m, n, s.box_point(-1, 1));
        EXPECT_LT(std::abs(c - std::round(c)), 1e-10);
    }
}

TEST(ChernCocycle, LiteralSignIsNotInteger)
{
    // (Log g_lm + Log g_mn - Log g_nl) / 2 pi i is not integer valued.
    Sampler s(318);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const GroupWord l = s.word(2), m = s.word(2), n = s.word(2);
        const KTPoint u = s.box_point(-1, 1);
        const complex v = (detail::log_transition(l, m, u) + detail::log_transition(m, n, u) - detail::log_transition(n, l, u))
                          / complex(0.0, 2.0 * oracle::pi);
        worst = std::max(worst, std::abs(v - std::round(v.real())));
    }
    EXPECT_GT(worst, 0.1);
}

TEST(ChernCocycle, GroupCocycleAntisymmetrizesToChernNumbers)
{
    Sampler s(319);
    for (int i = 0; i < 100; ++i) {
        const KTPoint u = s.box_point(-2, 2);
        for (TorusId id : all_tori) {
            const auto [l, m] = torus_generators(id);
            const double c = group_cocycle(l, m, u) - group_cocycle(m, l, u);
            EXPECT_NEAR(c, chern_via_multiplicators(l, m, u), 1e-10);
        }
        const GroupWord w1 = s.word(2), w2 = s.word(2);
        const double g = group_cocycle(w1, w2, u);
        EXPECT_LT(std::abs(g - std::round(g)), 1e-10);
    }
}

TEST(ChernViaMultiplicators, BasisTori)
{
    EXPECT_EQ(chern_via_multiplicators(TorusId::ca), 1);
    EXPECT_EQ(chern_via_multiplicators(TorusId::bd), 1);
    EXPECT_EQ(chern_via_multiplicators(TorusId::cb), 0);
    EXPECT_EQ(chern_via_multiplicators(TorusId::ad), 0);
    EXPECT_EQ(to_string(TorusId::ca), "T_ca");
}

TEST(ChernViaMultiplicators, IndependentOfEvaluationPoint)
{
    Sampler s(320);
    for (int i = 0; i < 100; ++i) {
        const KTPoint u = s.box_point(-2, 2);
        EXPECT_EQ(chern_via_multiplicators(TorusId::ca, u), 1);
        EXPECT_EQ(chern_via_multiplicators(TorusId::bd, u), 1);
        EXPECT_EQ(chern_via_multiplicators(TorusId::cb, u), 0);
        EXPECT_EQ(chern_via_multiplicators(TorusId::ad, u), 0);
    }
}

TEST(ChernViaMultiplicators, RejectsNonCommutingPairs)
{
    EXPECT_THROW(chern_via_multiplicators(GroupWord::a(), GroupWord::b(), {}), NonCommutingPair);
}
