#include <gtest/gtest.h>

#include <cmath>

#include "siegel/automorphism.hpp"
#include "siegel/errors.hpp"
#include "siegel/metrics.hpp"
#include "siegel/sampling.hpp"

using namespace siegel;

namespace {

const Complex I(0.0, 1.0);

SiegelPoint sp(Complex z, Complex w) { return SiegelPoint(z, CVector{w}); }

} // namespace

TEST(Points, RejectsOutsideDomain) {
    EXPECT_THROW(sp(1.0, 1.0), DomainError);
    EXPECT_THROW(BallPoint(CVector{0.6, 0.8}), DomainError);
    EXPECT_NO_THROW(sp(1.0 + 1e-12, 1.0));
}

TEST(Points, CayleyNearMinusOneKeepsRelativeAccuracy) {
    // reference from a 50-digit evaluation at the double nearest -1 + 1e-9
    const SiegelPoint p = cayley_to_siegel(BallPoint(CVector{-1.0 + 1e-9, 0.0}));
    EXPECT_NEAR(p.z().real(), 4.9999998610903425427e-10, 1e-24);
}

TEST(Points, CayleyRoundTrip) {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const SiegelPoint p = random_siegel_point(rng, 3);
        const SiegelPoint back = cayley_to_siegel(siegel_to_ball(p));
        EXPECT_LT(max_abs_diff(back.coords(), p.coords()), 1e-9 * std::max(1.0, std::abs(p.z())));
    }
}

TEST(Metrics, DistSiegelMatchesHighPrecision) {
    EXPECT_NEAR(dist_siegel(sp(1.0 + 0.5 * I, 0.3 - 0.2 * I), sp(2.0 - I, 0.1 + 0.4 * I)),
                0.70825683676387016038, 1e-15);
    // boundary-hugging pair, separation far below the coordinates
    EXPECT_NEAR(dist_siegel(sp(1e-8 + 0.3 * I, 0.0), sp(2e-8 + 0.3 * I, 1e-5)), 0.33993463423951898867, 1e-13);
    EXPECT_NEAR(dist_siegel(sp(1e6 + 3e5 * I, 10.0), sp(1.1e6 + 3e5 * I, 10.0 + I)), 0.047633106960597667189, 1e-12);
}

TEST(Metrics, DistBallMatchesHighPrecision) {
    const BallPoint a(CVector{0.3 + 0.1 * I, 0.2 * I});
    const BallPoint b(CVector{-0.5, 0.4 + 0.1 * I});
    EXPECT_NEAR(dist_ball(a, b), 0.78079547350822372393, 1e-15);
    EXPECT_DOUBLE_EQ(dist_ball(a, a), 0.0);
    EXPECT_NEAR(dist_ball(BallPoint(CVector{0.0, 0.0}), BallPoint(CVector{0.6, 0.0})), 0.6, 1e-15);
}

TEST(Metrics, DistanceIsSymmetricAndBounded) {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const SiegelPoint p = random_siegel_point(rng, 2), q = random_siegel_point(rng, 2);
        const double d = dist_siegel(p, q);
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, 1.0);
        EXPECT_EQ(d, dist_siegel(q, p));
    }
}

TEST(Metrics, HorosphereAndKoranyiRatiosAtOrigin) {
    const SiegelPoint p = sp(1.0 + 0.5 * I, 0.3 - 0.2 * I);
    EXPECT_NEAR(horosphere_ratio_siegel(p, CVector{0.0, 0.0}), 1.4367816091954022952, 1e-14);
    EXPECT_NEAR(koranyi_ratio_siegel(p, CVector{0.0, 0.0}), 1.8884810102532476936, 1e-14);
    const BoundaryPoint x = BoundaryPoint::ball(CVector{-1.0, 0.0});
    EXPECT_NEAR(horosphere_ratio(siegel_to_ball(p), x), 1.4367816091954022952, 1e-13);
}

TEST(Metrics, SiegelHorosphereAtInfinityIsDefectLevel) {
    const Horosphere h = Horosphere::siegel_at_infinity(0.5);
    EXPECT_TRUE(horosphere_contains(h, sp(1.0, 0.5)));   // defect 0.75
    EXPECT_FALSE(horosphere_contains(h, sp(0.6, 0.5))); // defect 0.35
}

TEST(Metrics, HyperbolicBallExtremesBracketNorms) {
    Rng rng(5);
    const BallPoint z(CVector{0.5, 0.2 * I});
    const NormBounds b = hyperbolic_ball_extremes(z, 0.3);
    for (int i = 0; i < 500; ++i) {
        const BallPoint w = random_ball_point(rng, 2);
        if (dist_ball(z, w) > 0.3) continue;
        EXPECT_GE(norm(w.v()), b.min_norm - 1e-12);
        EXPECT_LE(norm(w.v()), b.max_norm + 1e-12);
    }
}

TEST(Automorphism, RecenteringSendsBoundaryPointToOrigin) {
    const CVector q{1.0 + 2.0 * I, 1.0};
    const CVector image = SiegelAutomorphism::recentering(q).apply_coords(q);
    EXPECT_LT(max_abs_diff(image, CVector{0.0, 0.0}), 1e-15);
}

TEST(Automorphism, InverseAndComposition) {
    Rng rng(17);
    const SiegelAutomorphism a = compose(SiegelAutomorphism::dilation(3.0),
                                         SiegelAutomorphism::translation(0.7, CVector{0.2 - 0.1 * I}));
    const SiegelAutomorphism inv = invert(a);
    for (int i = 0; i < 100; ++i) {
        const SiegelPoint p = random_siegel_point(rng, 2);
        const SiegelPoint back = inv.apply(a.apply(p));
        EXPECT_LT(max_abs_diff(back.coords(), p.coords()), 1e-12 * std::max(1.0, std::abs(p.z())));
    }
}

TEST(Automorphism, DilationScalesDefect) {
    const SiegelPoint p = sp(2.0 + I, 1.0);
    EXPECT_DOUBLE_EQ(SiegelAutomorphism::dilation(4.0).apply(p).defect(), p.defect() / 4.0);
}

TEST(Automorphism, LinearDiagRequiresUnitaryTail) {
    EXPECT_THROW(SiegelAutomorphism::linear_diag(2.0, CVector{1.0}), InvalidParameter);
    EXPECT_NO_THROW(SiegelAutomorphism::linear_diag(2.0, CVector{std::sqrt(2.0) * I}));
}

TEST(Automorphism, IsometryOnRandomPairs) {
    Rng rng(23);
    const SiegelAutomorphism a = compose(SiegelAutomorphism::translation(-1.5, CVector{0.4, 1.0 * I}),
                                         SiegelAutomorphism::linear_diag(0.25, CVector{0.5, -0.5 * I}));
    for (int i = 0; i < 500; ++i) {
        const SiegelPoint p = random_siegel_point(rng, 3), q = random_siegel_point(rng, 3);
        EXPECT_NEAR(dist_siegel(a.apply(p), a.apply(q)), dist_siegel(p, q), 1e-12);
    }
}
