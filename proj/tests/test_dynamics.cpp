#include <gtest/gtest.h>

#include <cmath>

#include "siegel/dynamics.hpp"
#include "siegel/errors.hpp"
#include "siegel/solver.hpp"

using namespace siegel;

namespace {

const Complex I(0.0, 1.0);

MapDescriptor quadpol() { return MapDescriptor::quadratic(2.0, 1.0, 1.0); }
MapDescriptor elliptic() { return MapDescriptor::ball_product({BlaschkeDeg2{0.5}, DiskScale{0.5}}); }
BoundaryPoint origin() { return BoundaryPoint::siegel(CVector{0.0, 0.0}); }

} // namespace

TEST(Multiplier, QuadpolAtBothFixedPoints) {
    EXPECT_NEAR(multiplier_at_boundary(quadpol(), origin()), 2.0, 1e-6);
    EXPECT_NEAR(multiplier_at_boundary(quadpol(), BoundaryPoint::siegel_infinity(2)), 0.5, 1e-6);
}

TEST(Multiplier, EllipticMatchesOneDimDerivative) {
    // b'(1) for b(z) = z(z + 1/2)/(1 + z/2)
    EXPECT_NEAR(multiplier_at_boundary(elliptic(), origin()), 1.3333333333333333333, 1e-6);
}

TEST(Multiplier, ValidatesArguments) {
    EXPECT_THROW(estimate_multiplier(quadpol(), origin(), 1.5), InvalidParameter);
    EXPECT_THROW(estimate_multiplier(quadpol(), origin(), 0.5, 2), InvalidParameter);
}

TEST(ForwardOrbit, QuadpolEscapesToInfinity) {
    const ForwardOrbit o = forward_orbit(quadpol(), SiegelPoint(1.0, CVector{0.0}), 20, 1e-10);
    ASSERT_TRUE(o.dw_estimate);
    EXPECT_TRUE(o.dw_estimate->at_infinity());
    EXPECT_EQ(o.points.size(), 21u);
}

TEST(ForwardOrbit, ContractingMapConvergesToOrigin) {
    const ForwardOrbit o = forward_orbit(MapDescriptor::quadratic(0.5, 0.0, 0.5), SiegelPoint(1.0 + I, CVector{0.3}), 200, 1e-10);
    EXPECT_TRUE(o.converged);
    ASSERT_TRUE(o.dw_estimate);
    EXPECT_FALSE(o.dw_estimate->at_infinity());
    EXPECT_LT(norm(o.dw_estimate->v()), 1e-4);
}

TEST(BackwardOrbit, QuadpolHalvesWithStepOneThird) {
    const BackwardOrbit o = backward_orbit(quadpol(), SiegelPoint(1.0, CVector{0.0}), 0.34, 40);
    ASSERT_EQ(o.status, OrbitStatus::complete);
    ASSERT_EQ(o.points.size(), 41u);
    for (std::size_t k = 0; k < o.points.size(); ++k) {
        EXPECT_EQ(o.points[k].z(), Complex(std::ldexp(1.0, -static_cast<int>(k))));
        EXPECT_EQ(o.points[k].w()[0], Complex(0.0));
    }
    for (double d : o.steps) EXPECT_NEAR(d, 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(o.multiplier_estimate, 2.0, 1e-12);
    ASSERT_TRUE(o.limit);
    EXPECT_LT(norm(o.limit->v()), 1e-10);
    EXPECT_NEAR(o.koranyi_certificate, 1.0, 1e-12);
}

TEST(BackwardOrbit, StepBoundTooSmallStopsWithStatus) {
    const BackwardOrbit o = backward_orbit(quadpol(), SiegelPoint(1.0, CVector{0.0}), 0.2, 10);
    EXPECT_EQ(o.status, OrbitStatus::no_backward_step);
    EXPECT_EQ(o.points.size(), 1u);
    EXPECT_FALSE(o.status_message.empty());
}

TEST(BackwardOrbit, RejectsBadStepBound) {
    EXPECT_THROW(backward_orbit(quadpol(), SiegelPoint(1.0, CVector{0.0}), 1.0, 10), InvalidParameter);
}

TEST(BackwardOrbit, LiftedMapTendsToCurvePoint) {
    const MapDescriptor f = lift_one_dim(HalfPlaneLinear{2.0});
    const BackwardOrbit o = backward_orbit(f, SiegelPoint(2.0, CVector{1.0}), 0.34, 40);
    ASSERT_EQ(o.status, OrbitStatus::complete);
    ASSERT_TRUE(o.limit);
    EXPECT_LT(max_abs_diff(o.limit->v(), CVector{1.0, 1.0}), 1e-10);
    for (std::size_t k = 5; k + 1 < o.defects.size(); ++k) EXPECT_NEAR(o.defects[k] / o.defects[k + 1], 2.0, 1e-9);
}

TEST(BackwardOrbit, EllipticFixtureReachesBallPointOne) {
    const BackwardOrbit o = backward_orbit(elliptic(), SiegelPoint(1.0 / 3.0, CVector{0.0}), 0.3, 80);
    ASSERT_EQ(o.status, OrbitStatus::complete);
    ASSERT_TRUE(o.limit_ball);
    EXPECT_LT(max_abs_diff(o.limit_ball->v(), CVector{1.0, 0.0}), 1e-6);
    EXPECT_NEAR(o.multiplier_estimate, 4.0 / 3.0, 1e-4);
}

TEST(BackwardStep, SolverAgreesWithClosedForm) {
    SolverPolicy newton;
    newton.use_closed_form = false;
    const SiegelPoint target(0.8 + 0.3 * I, CVector{0.2 - 0.1 * I});
    const SiegelPoint a = backward_step(quadpol(), target, 0.9);
    const SiegelPoint b = backward_step(quadpol(), target, 0.9, newton);
    EXPECT_LT(max_abs_diff(a.coords(), b.coords()), 1e-10);
}

TEST(Newton, ConvergesOnQuadratic) {
    const MapDescriptor f = MapDescriptor::quadratic(3.0, 1.0 + I, 1.0);
    const SiegelPoint target(2.0 + I, CVector{0.5});
    const NewtonResult r = newton_preimage(f, target, target.coords());
    ASSERT_TRUE(r.converged);
    EXPECT_LT(max_abs_diff(evaluate_coords(f, r.point), target.coords()), 1e-12);
}

TEST(DefectDecay, QuadpolWithContractionOneHalf) {
    const BackwardOrbit o = backward_orbit(quadpol(), SiegelPoint(1.0, CVector{0.0}), 0.34, 30);
    EXPECT_TRUE(verify_defect_decay(o, 0.5).ok);
    EXPECT_FALSE(verify_defect_decay(o, 0.4).ok);
}

TEST(Julia, QuadpolInclusionsAtBothFixedPoints) {
    const JuliaReport at0 = julia_inclusion_check(quadpol(), origin(), 2.0, 2000, 1);
    EXPECT_EQ(at0.violations, 0u);
    EXPECT_EQ(at0.samples, 2000u);
    const JuliaReport inf = julia_inclusion_check(quadpol(), BoundaryPoint::siegel_infinity(2), 0.5, 2000, 1);
    EXPECT_EQ(inf.violations, 0u);
}

TEST(Julia, UnderstatedMultiplierIsDetected) {
    const JuliaReport r = julia_inclusion_check(quadpol(), origin(), 1.5, 2000, 1);
    EXPECT_GT(r.violations, 0u);
}

TEST(Asymptotics, QuadpolRatiosAreExact) {
    const BackwardOrbit o = backward_orbit(quadpol(), SiegelPoint(1.0, CVector{0.0}), 0.34, 40);
    const AsymptoticsReport a = orbit_asymptotics(o, SiegelAutomorphism::identity());
    for (std::size_t k = 0; k < a.t_ratio.size(); ++k) {
        EXPECT_EQ(a.re_z_over_t[k], 1.0);
        EXPECT_EQ(a.im_z_over_t[k], 0.0);
        EXPECT_EQ(a.w_sq_over_t[k], 0.0);
        EXPECT_EQ(a.t_ratio[k], 2.0);
    }
    EXPECT_TRUE(a.re_ok && a.im_ok && a.w_ok && a.t_ok);
}

TEST(Asymptotics, ShortOrbitThrows) {
    const BackwardOrbit o = backward_orbit(quadpol(), SiegelPoint(1.0, CVector{0.0}), 0.34, 2);
    EXPECT_THROW(orbit_asymptotics(o, SiegelAutomorphism::identity()), OrbitTooShort);
}

TEST(EllipticGrowth, FixtureConstantMatchesDenseSampling) {
    // dense-grid reference: 0.833333333333333
    const EllipticGrowth g = elliptic_growth_constant(elliptic(), 0.5);
    EXPECT_NEAR(g.c, 0.833333333333333, 1e-9);
    EXPECT_FALSE(g.apparent_non_elliptic);
}

TEST(EllipticGrowth, RotationIsFlagged) {
    const MapDescriptor rot = MapDescriptor::ball_product({DiskScale{std::polar(1.0, 0.4)}, DiskScale{0.5}});
    const EllipticGrowth g = elliptic_growth_constant(rot, 0.5);
    EXPECT_NEAR(g.c, 1.0, 1e-9);
    EXPECT_TRUE(g.apparent_non_elliptic);
}

TEST(Angular, QuadpolRatioTendsToMultiplier) {
    std::vector<SiegelPoint> samples;
    for (int k = 1; k <= 30; ++k) samples.emplace_back(std::ldexp(1.0, -k), CVector{0.0});
    const AngularReport r = angular_ratio_diagnostics(quadpol(), origin(), samples);
    EXPECT_TRUE(r.bounded);
    EXPECT_NEAR(r.ratio_limit, 2.0, 1e-6);
}

TEST(Inversion, SwapsOriginAndInfinityAndIsInvolutive) {
    const CVector c{2.0 + I, 0.5 - 0.5 * I};
    EXPECT_LT(max_abs_diff(siegel_inversion(siegel_inversion(c)), c), 1e-15);
    EXPECT_NEAR(defect_of(siegel_inversion(c)), defect_of(c) / std::norm(c[0]), 1e-15);
}
