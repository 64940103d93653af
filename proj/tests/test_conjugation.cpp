#include <gtest/gtest.h>

#include <cmath>

#include "siegel/conjugation.hpp"
#include "siegel/errors.hpp"

using namespace siegel;

namespace {

const Complex I(0.0, 1.0);

MapDescriptor quadpol() { return MapDescriptor::quadratic(2.0, 1.0, 1.0); }
MapDescriptor elliptic() { return MapDescriptor::ball_product({BlaschkeDeg2{0.5}, DiskScale{0.5}}); }
BoundaryPoint origin() { return BoundaryPoint::siegel(CVector{0.0, 0.0}); }

} // namespace

TEST(Model, EtaAndProjection) {
    const ConjugationModel m = ConjugationModel::basic(2.0, 2);
    const SiegelPoint p = m.eta(1).apply(SiegelPoint(1.0 + I, CVector{0.5}));
    EXPECT_EQ(p.z(), Complex(2.0, 2.0));
    EXPECT_NEAR(std::abs(p.w()[0]), 0.5 * std::sqrt(2.0), 1e-15);
    EXPECT_EQ(m.project(CVector{1.0 + I, 0.5}), (CVector{1.0 + I, 0.0}));
    EXPECT_THROW(ConjugationModel::basic(1.0, 2), InvalidParameter);
}

TEST(Tau, SendsBasePointToOrbit) {
    const BackwardOrbit o = backward_orbit(quadpol(), SiegelPoint(1.0, CVector{0.0}), 0.34, 20);
    const ConjugationModel m = ConjugationModel::basic(2.0, 2);
    for (int n : {0, 3, 10, 20}) {
        const SiegelPoint z = build_tau(o, n, m).apply(SiegelPoint(1.0, CVector{0.0}));
        EXPECT_LT(max_abs_diff(z.coords(), o.points[n].coords()), 1e-15);
    }
}

TEST(Tau, DiagnosticsVanishForQuadpol) {
    const BackwardOrbit o = backward_orbit(quadpol(), SiegelPoint(1.0, CVector{0.0}), 0.34, 30);
    const TauDiagnostics d = tau_limit_diagnostics(o, ConjugationModel::basic(2.0, 2), 1, default_grid(2));
    for (double e : d.shift_error) EXPECT_LT(e, 1e-12);
    EXPECT_TRUE(d.decreasing);
}

TEST(Conjugation, QuadpolResidualsAreZero) {
    const BackwardOrbit o = backward_orbit(quadpol(), SiegelPoint(1.0, CVector{0.0}), 0.34, 30);
    const ConjugationRun run = run_conjugation(quadpol(), o, ConjugationModel::basic(2.0, 2), default_grid(2), 30);
    for (double r : run.residuals) EXPECT_LE(r, 1e-12);
    ASSERT_FALSE(run.interp_errors.empty());
    for (double e : run.interp_errors) EXPECT_LE(e, 1e-10);
}

TEST(Conjugation, LinearMapIsItsOwnModel) {
    const CVector lambda{std::polar(std::sqrt(2.0), 0.7)};
    const MapDescriptor f = MapDescriptor::diagonal_linear(2.0, lambda);
    const ConjugationModel m = ConjugationModel::expandable(expandable_decompose(f));
    EXPECT_EQ(m.L, 1);
    const BackwardOrbit o = backward_orbit(f, SiegelPoint(1.0, CVector{0.0}), 0.34, 30);
    ASSERT_EQ(o.status, OrbitStatus::complete);
    const ConjugationRun run = run_conjugation(f, o, m, default_grid(2), 30);
    for (double r : run.residuals) EXPECT_LE(r, 1e-12);
    // the orbit through (1, 0) is Z_n itself, so psi is the identity
    for (const auto& [z, psi] : run.psi_samples.back()) EXPECT_LT(dist_siegel(z, psi), 1e-12);
}

TEST(Conjugation, EllipticResidualDecreases) {
    const SpecialConstruction sc = special_backward_construct(elliptic(), origin(), 4.0 / 3.0, 0.5, 40);
    const ConjugationRun run = run_conjugation(elliptic(), sc.orbit, ConjugationModel::basic(4.0 / 3.0, 2),
                                               default_grid(2), 40);
    ASSERT_GE(run.residuals.size(), 31u);
    EXPECT_LT(run.residuals[30], 1e-3);
    for (std::size_t n = 2; n < run.residuals.size(); ++n) EXPECT_LE(run.residuals[n], run.residuals[n - 1]);
}

TEST(Special, EllipticStepsTendToOneSeventh) {
    const SpecialConstruction sc = special_backward_construct(elliptic(), origin(), 4.0 / 3.0, 0.5, 60);
    EXPECT_NEAR(sc.a, 1.0 / 7.0, 1e-15);
    ASSERT_FALSE(sc.orbit.steps.empty());
    EXPECT_NEAR(sc.orbit.steps.back(), 1.0 / 7.0, 1e-4);
    for (double d : sc.orbit.steps) EXPECT_LE(d, 1.0 / 7.0 + 1e-9);
}

TEST(Special, RejectsPointAtInfinityAndBadAlpha) {
    EXPECT_THROW(special_backward_construct(quadpol(), BoundaryPoint::siegel_infinity(2), 2.0, 0.5, 10),
                 InvalidParameter);
    EXPECT_ANY_THROW(special_backward_construct(quadpol(), origin(), 1.0, 0.5, 10));
}

TEST(Conjugation, RecentresOrbitsEndingAwayFromOrigin) {
    const MapDescriptor f = lift_one_dim(HalfPlaneLinear{2.0});
    const BackwardOrbit o = backward_orbit(f, SiegelPoint(2.0, CVector{1.0}), 0.34, 30);
    const ConjugationRun run = run_conjugation(f, o, ConjugationModel::basic(2.0, 2), default_grid(2), 20);
    EXPECT_FALSE(run.recenter.is_identity());
    ASSERT_TRUE(run.orbit.limit);
    EXPECT_LT(norm(run.orbit.limit->v()), 1e-9);
}
