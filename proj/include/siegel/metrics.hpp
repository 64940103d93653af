#pragma once

#include <optional>

#include "siegel/points.hpp"

namespace siegel {

/// Pseudo-hyperbolic distance in B^N:
///   d^2 = 1 - (1 - ||Z||^2)(1 - ||W||^2) / |1 - (Z, W)|^2.
/// Evaluated through |1-(Z,W)|^2 - (1-||Z||^2)(1-||W||^2)
///   = ||Z - W||^2 - sum_{i<j} |Z_i W_j - Z_j W_i|^2
/// so that nearby points do not lose their distance to cancellation.
double dist_ball(const BallPoint& a, const BallPoint& b);

/// Pseudo-hyperbolic distance in H^N:
///   d^2 = 1 - 4 t_P t_Q / |z_P + conj(z_Q) - 2<w_P, w_Q>|^2.
/// The numerator |D|^2 - 4 t_P t_Q is expanded into the non-negative sum
///   (t_P - t_Q)^2 + 2 (t_P + t_Q) ||dw||^2 + ||dw||^4 + (Im D)^2.
double dist_siegel(const SiegelPoint& p, const SiegelPoint& q);

/// Re z - ||w||^2.
double defect(const SiegelPoint& p);

/// pr(z, w) = (i Im z + ||w||^2, w); lands on the boundary of H^N.
CVector boundary_projection(const SiegelPoint& p);

enum class HorosphereModel { ball, siegel_at_infinity };

/// Open horosphere. Ball: { |1 - (Z, X)|^2 / (1 - ||Z||^2) < R }.
/// Siegel at infinity: { defect > t }.
struct Horosphere {
    HorosphereModel model;
    std::optional<BoundaryPoint> center; // ball model only
    double size;                         // radius R (ball) or level t (siegel)

    static Horosphere ball(BoundaryPoint center, double radius);
    static Horosphere siegel_at_infinity(double level);
};

bool horosphere_contains(const Horosphere& h, const BallPoint& z);
bool horosphere_contains(const Horosphere& h, const SiegelPoint& p);

/// |1 - (Z, X)|^2 / (1 - ||Z||^2); the horosphere H(X, R) is its R-sublevel set.
double horosphere_ratio(const BallPoint& z, const BoundaryPoint& x);
/// Same quantity for C^{-1}(P) and C^{-1}(Q), Q a finite Siegel boundary point.
/// At Q = 0 this reduces to |z|^2 / defect.
double horosphere_ratio_siegel(const SiegelPoint& p, const CVector& q);

struct KoranyiRegion {
    BoundaryPoint vertex; // ball model
    double amplitude;     // M > 1

    KoranyiRegion(BoundaryPoint vertex, double amplitude);
};

/// |1 - (Z, q)| / (1 - ||Z||).
double koranyi_ratio(const BallPoint& z, const BoundaryPoint& q);
/// Koranyi ratio of C^{-1}(P) at C^{-1}(Q), computed from Siegel data.
double koranyi_ratio_siegel(const SiegelPoint& p, const CVector& q);
bool koranyi_contains(const KoranyiRegion& k, const BallPoint& z);

struct NormBounds {
    double min_norm;
    double max_norm;
};

/// Norm range of the closed pseudo-hyperbolic ball of radius d about Z.
NormBounds hyperbolic_ball_extremes(const BallPoint& z, double d);

} // namespace siegel
