#pragma once

#include <cstddef>

#include "siegel/cvector.hpp"

namespace siegel {

/// Point of the unit ball B^N, ||v|| < 1.
class BallPoint {
  public:
    explicit BallPoint(CVector v);

    const CVector& v() const { return v_; }
    std::size_t dim() const { return v_.size(); }

  private:
    CVector v_;
};

/// Point (z, w) of the Siegel domain H^N = { Re z > ||w||^2 }.
class SiegelPoint {
  public:
    SiegelPoint(Complex z, CVector w);
    /// Full coordinates (z, w_1, ..., w_{N-1}).
    static SiegelPoint from_coords(const CVector& coords);
    /// Point whose defect is known more accurately than Re z - ||w||^2 of the
    /// rounded coordinates, e.g. the image of a point under an automorphism.
    static SiegelPoint with_defect(Complex z, CVector w, double t);

    Complex z() const { return z_; }
    const CVector& w() const { return w_; }
    std::size_t dim() const { return w_.size() + 1; }

    /// Re z - ||w||^2, strictly positive.
    double defect() const { return t_; }
    /// True when the defect was carried along rather than read off the coordinates.
    bool tracked_defect() const { return tracked_; }
    CVector coords() const { return prepend(z_, w_); }

  private:
    SiegelPoint() = default;

    Complex z_;
    CVector w_;
    double t_ = 0.0;
    bool tracked_ = false;
};

bool in_siegel_domain(const CVector& coords);
double defect_of(const CVector& coords);

enum class Model { ball, siegel };

/// Boundary point of either model. Siegel boundary points may sit at infinity.
class BoundaryPoint {
  public:
    static BoundaryPoint ball(CVector v);
    static BoundaryPoint siegel(CVector v);
    static BoundaryPoint siegel_infinity(std::size_t dim);

    Model model() const { return model_; }
    bool at_infinity() const { return at_infinity_; }
    /// Coordinates; empty-valued (all zero) when at infinity.
    const CVector& v() const { return v_; }
    std::size_t dim() const { return v_.size(); }

  private:
    BoundaryPoint(Model m, CVector v, bool inf) : model_(m), v_(std::move(v)), at_infinity_(inf) {}
    Model model_;
    CVector v_;
    bool at_infinity_;
};

/// C(z, w) = ((1 + z) / (1 - z), w / (1 - z)).
SiegelPoint cayley_to_siegel(const BallPoint& p);
/// C^{-1}(z, w) = ((z - 1) / (z + 1), 2w / (z + 1)).
BallPoint siegel_to_ball(const SiegelPoint& p);

/// Variant sending the ball point (1, 0) to the Siegel origin: C composed with
/// the ball reflection (z, w) -> (-z, w).
SiegelPoint cayley_flipped_to_siegel(const BallPoint& p);
BallPoint siegel_to_ball_flipped(const SiegelPoint& p);

/// Boundary correspondences; (1, 0) <-> infinity for the standard transform.
BoundaryPoint boundary_to_ball(const BoundaryPoint& siegel_point);
BoundaryPoint boundary_to_siegel(const BoundaryPoint& ball_point);

/// Quantities of the ball model evaluated from Siegel coordinates without
/// cancellation: 1 - ||C^{-1}P||^2 = 4 defect(P) / |z + 1|^2.
double ball_one_minus_norm_sq(const SiegelPoint& p);
/// 1 - (C^{-1}P, C^{-1}Q) for a finite Siegel point or finite boundary point Q.
Complex ball_one_minus_inner(const SiegelPoint& p, const CVector& q);

} // namespace siegel
