#include <gtest/gtest.h>

#include <cmath>

#include "siegel/errors.hpp"
#include "siegel/maps.hpp"
#include "siegel/sampling.hpp"

using namespace siegel;

namespace {

const Complex I(0.0, 1.0);

double rel_dev(const CVector& a, const CVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
    return worst;
}

} // namespace

TEST(OneDim, BlaschkeDerivativeAtOne) {
    // quotient rule: b'(1) = 2 / (1 + a)
    EXPECT_NEAR(std::real(one_dim_derivative(BlaschkeDeg2{0.5}, 1.0)), 1.3333333333333333333, 1e-15);
    EXPECT_EQ(evaluate_one_dim(BlaschkeDeg2{0.5}, 1.0), Complex(1.0));
}

TEST(OneDim, StableOneMinusMatchesDirectFarFromOne) {
    const OneDimMap b = BlaschkeDeg2{0.3};
    const Complex x(0.2, -0.4);
    EXPECT_LT(std::abs(one_dim_one_minus(b, x, 1.0 - x) - (1.0 - evaluate_one_dim(b, x))), 1e-15);
}

TEST(OneDim, ValidationRejectsBadParameters) {
    EXPECT_THROW(validate_one_dim(HalfPlaneLinear{1.0}), InvalidDescriptor);
    EXPECT_THROW(validate_one_dim(HalfPlaneLinear{-2.0}), InvalidDescriptor);
    EXPECT_THROW(validate_one_dim(HalfPlaneAffine{2.0, Complex(-1.0, 0.0)}), InvalidDescriptor);
    EXPECT_THROW(validate_one_dim(BlaschkeDeg2{1.0}), InvalidDescriptor);
    EXPECT_THROW(validate_one_dim(DiskScale{Complex(1.1, 0.0)}), InvalidDescriptor);
    EXPECT_TRUE(is_disk_rotation(DiskScale{std::polar(1.0, 0.3)}));
}

TEST(Maps, QuadraticValidation) {
    EXPECT_NO_THROW(MapDescriptor::quadratic(2.0, 1.0, 1.0));
    EXPECT_THROW(MapDescriptor::quadratic(1.0, 0.5, 1.0), InvalidDescriptor);
    EXPECT_THROW(MapDescriptor::quadratic(0.0, 0.0, 0.0), InvalidDescriptor);
}

TEST(Maps, EvaluateQuadpol) {
    const MapDescriptor f = MapDescriptor::quadratic(2.0, 1.0, 1.0);
    const SiegelPoint p = evaluate(f, SiegelPoint(1.0 + I, CVector{0.5 * I}));
    EXPECT_EQ(p.z(), Complex(1.75, 2.0));
    EXPECT_EQ(p.w()[0], 0.5 * I);
}

TEST(Maps, QuadraticInverseMatchesReference) {
    const QuadraticSiegel q{2.0, 0.5 + 0.5 * I, 0.3 * I};
    const InverseResult r = quadratic_inverse(q, CVector{1.5 - 0.25 * I, 0.2 + 0.1 * I});
    EXPECT_NEAR(r.point[0].real(), 0.72222222222222221708, 1e-14);
    EXPECT_NEAR(r.point[0].imag(), 0.069444444444444480424, 1e-14);
    EXPECT_NEAR(r.point[1].real(), 0.33333333333333336417, 1e-14);
    EXPECT_NEAR(r.point[1].imag(), -0.66666666666666672835, 1e-14);
}

TEST(Maps, ClosedFormIterateMatchesRepetition) {
    Rng rng(41);
    for (const QuadraticSiegel q : {QuadraticSiegel{2.0, 1.0, 1.0}, QuadraticSiegel{0.7, 0.1 * I, 0.5},
                                    QuadraticSiegel{1.0 + 1e-9, 0.0, 0.9}, QuadraticSiegel{3.0, -1.0, std::sqrt(2.0) * I}}) {
        const MapDescriptor f = MapDescriptor::quadratic(q.A, q.B, q.C);
        for (int i = 0; i < 20; ++i) {
            const CVector c = random_siegel_point(rng, 2).coords();
            CVector cur = c;
            for (int n = 0; n <= 20; ++n) {
                EXPECT_LT(rel_dev(quadratic_iterate_closed(q, n, c), cur), 1e-10);
                cur = evaluate_coords(f, cur);
            }
        }
    }
}

TEST(Maps, LiftedIterateAndInverse) {
    const MapDescriptor f = lift_one_dim(HalfPlaneAffine{2.0, Complex(0.0, 1.0)});
    const Lifted& l = std::get<Lifted>(f.variant());
    const CVector c{2.0 + 0.5 * I, 1.0};
    CVector cur = c;
    for (int n = 0; n < 10; ++n) cur = evaluate_coords(f, cur);
    EXPECT_LT(rel_dev(lifted_iterate_closed(l, 10, c), cur), 1e-13);
    const auto inv = closed_form_inverse(f, c);
    ASSERT_TRUE(inv);
    EXPECT_LT(rel_dev(evaluate_coords(f, inv->point), c), 1e-15);
}

TEST(Maps, LiftRejectsNonHalfPlaneMaps) {
    EXPECT_THROW(lift_one_dim(BlaschkeDeg2{0.5}), InvalidDescriptor);
    EXPECT_THROW(lift_one_dim(HalfPlaneLinear{0.5}), InvalidDescriptor);
}

TEST(Classify, QuadpolIsHyperbolicWithFixedCurve) {
    const ClassificationReport r = classify_quadratic(2.0, 1.0, 1.0);
    ASSERT_TRUE(r.is_self_map);
    EXPECT_EQ(*r.type, MapType::hyperbolic);
    EXPECT_TRUE(r.denjoy_wolff->at_infinity());
    EXPECT_DOUBLE_EQ(*r.brfp_multiplier, 2.0);
    EXPECT_DOUBLE_EQ(*r.multiplier_at_dw, 0.5);
    ASSERT_EQ(r.fixed_point_set.kind, FixedPointSet::Kind::boundary_curve);
    const MapDescriptor f = MapDescriptor::quadratic(2.0, 1.0, 1.0);
    for (double t : {-2.0, -0.3, 0.0, 0.7, 5.0}) {
        const CVector c = r.fixed_point_set.curve_point(t);
        EXPECT_LT(max_abs_diff(evaluate_coords(f, c), c), 1e-14);
        EXPECT_NEAR(defect_of(c), 0.0, 1e-14);
    }
}

TEST(Classify, ContractingQuadraticHasDenjoyWolffAtOrigin) {
    const ClassificationReport r = classify_quadratic(0.5, 0.1, 0.5);
    EXPECT_EQ(*r.type, MapType::hyperbolic);
    EXPECT_FALSE(r.denjoy_wolff->at_infinity());
    EXPECT_TRUE(r.brfp->at_infinity());
    EXPECT_DOUBLE_EQ(*r.brfp_multiplier, 2.0);
    EXPECT_EQ(r.fixed_point_set.kind, FixedPointSet::Kind::origin_and_infinity);
}

TEST(Classify, SpecialCases) {
    EXPECT_EQ(*classify_quadratic(1.0, 0.0, 1.0).type, MapType::identity);
    EXPECT_FALSE(classify_quadratic(1.0, 0.5, 1.0).is_self_map);
    const ClassificationReport zero = classify_quadratic(0.0, 0.0, 0.0);
    EXPECT_FALSE(zero.is_self_map);
    EXPECT_EQ(*zero.type, MapType::zero_map);
    EXPECT_EQ(*classify_quadratic(1.0, 0.0, 0.0).type, MapType::degenerate_projection);
    const ClassificationReport ell = classify_quadratic(1.0, 0.0, 0.5 * I);
    EXPECT_EQ(*ell.type, MapType::elliptic);
    EXPECT_EQ(ell.fixed_point_set.kind, FixedPointSet::Kind::interior_line);
}

TEST(Classify, OtherFamilies) {
    EXPECT_EQ(*classify(lift_one_dim(HalfPlaneAffine{1.0, Complex(0.0, 1.0)})).type, MapType::parabolic_excluded);
    const ClassificationReport lin = classify(MapDescriptor::diagonal_linear(2.0, CVector{1.0}));
    EXPECT_EQ(*lin.type, MapType::hyperbolic);
    EXPECT_DOUBLE_EQ(*lin.brfp_multiplier, 2.0);
    const ClassificationReport ell = classify(MapDescriptor::ball_product({BlaschkeDeg2{0.5}, DiskScale{0.5}}));
    EXPECT_EQ(*ell.type, MapType::elliptic);
    EXPECT_NEAR(*ell.brfp_multiplier, 4.0 / 3.0, 1e-15);
    EXPECT_LT(norm(ell.brfp->v()), 1e-15);
}

TEST(Maps, BallProductFrameSendsOneToSiegelOrigin) {
    const MapDescriptor f = MapDescriptor::ball_product({BlaschkeDeg2{0.5}, DiskScale{0.5}});
    ASSERT_TRUE(f.flipped_frame());
    // the interior fixed point, ball 0, is Siegel (1, 0) in this frame
    const SiegelPoint fixed = evaluate(f, SiegelPoint(1.0, CVector{0.0}));
    EXPECT_LT(max_abs_diff(fixed.coords(), CVector{1.0, 0.0}), 1e-15);
    // ball x = 0.5 on the axis is Siegel 1/3
    const SiegelPoint p = frame_to_siegel(f, BallPoint(CVector{0.5, 0.0}));
    EXPECT_NEAR(p.z().real(), 1.0 / 3.0, 1e-16);
    // evaluation agrees with the ball picture
    const BallPoint x(CVector{0.3 - 0.2 * I, 0.4 * I});
    const BallPoint fx = evaluate_ball(f, x);
    const SiegelPoint via = evaluate(f, frame_to_siegel(f, x));
    EXPECT_LT(max_abs_diff(frame_to_ball(f, via).v(), fx.v()), 1e-14);
}

TEST(Maps, ConjugatedMovesFixedPoint) {
    const MapDescriptor base = MapDescriptor::quadratic(2.0, 0.0, 1.0);
    const SiegelAutomorphism h = SiegelAutomorphism::translation(1.0, CVector{0.5});
    const MapDescriptor f = MapDescriptor::conjugated(base, h);
    // base fixes the boundary origin; the conjugate fixes h(0)
    const CVector q = h.apply_coords(CVector{0.0, 0.0});
    EXPECT_LT(max_abs_diff(evaluate_coords(f, q), q), 1e-14);
}

TEST(Maps, ExpandableDecomposition) {
    const ExpandableData e = expandable_decompose(MapDescriptor::quadratic(2.0, 1.0, 1.0));
    EXPECT_DOUBLE_EQ(e.alpha, 2.0);
    EXPECT_THROW(expandable_decompose(MapDescriptor::quadratic(0.5, 0.0, 0.5)), NotExpandable);
}
