#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "siegel/automorphism.hpp"
#include "siegel/one_dim.hpp"
#include "siegel/points.hpp"

namespace siegel {

class MapDescriptor;

/// f(z, w) = (A z + B w^2, C w) on H^2.
struct QuadraticSiegel {
    double A = 1.0;
    Complex B = 0.0;
    Complex C = 1.0;
};

/// f(z, w) = (phi(z - w^2) + w^2, w) on H^2, phi a half-plane map.
struct Lifted {
    OneDimMap phi;
};

/// f(z, w) = (alpha z, Lambda w), Lambda diagonal.
struct DiagonalLinear {
    double alpha = 1.0;
    CVector lambda;
};

/// by o base o by^{-1}.
struct Conjugated {
    std::shared_ptr<const MapDescriptor> base;
    SiegelAutomorphism by;
};

/// Coordinate-wise product of disk maps fixing 0, acting on the ball.
/// Its Siegel picture uses the flipped Cayley transform, so the ball point
/// (1, 0, ..., 0) sits at the Siegel origin.
struct BallProduct {
    std::vector<OneDimMap> components;
};

class MapDescriptor {
  public:
    using Variant = std::variant<QuadraticSiegel, Lifted, DiagonalLinear, Conjugated, BallProduct>;

    static MapDescriptor quadratic(double A, Complex B, Complex C);
    static MapDescriptor lifted(OneDimMap phi);
    static MapDescriptor diagonal_linear(double alpha, CVector lambda);
    static MapDescriptor conjugated(const MapDescriptor& base, SiegelAutomorphism by);
    static MapDescriptor ball_product(std::vector<OneDimMap> components);
    /// The linear model eta(z, w) = (alpha z, sqrt(alpha) Omega w).
    static MapDescriptor eta(double alpha, const CVector& omega);

    const Variant& variant() const { return v_; }
    std::size_t dim() const;
    std::string family() const;
    /// Whether the ball picture of this map is taken through the flipped Cayley transform.
    bool flipped_frame() const;

  private:
    friend MapDescriptor lift_one_dim(const OneDimMap& phi);
    explicit MapDescriptor(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// Raw evaluation on coordinates; defined on a neighbourhood of the closed
/// domain for the polynomial families.
CVector evaluate_coords(const MapDescriptor& f, const CVector& coords);
SiegelPoint evaluate(const MapDescriptor& f, const SiegelPoint& p);
/// n-fold evaluation.
SiegelPoint iterate(const MapDescriptor& f, const SiegelPoint& p, int n);

/// Ball picture in the map's frame.
SiegelPoint frame_to_siegel(const MapDescriptor& f, const BallPoint& p);
BallPoint frame_to_ball(const MapDescriptor& f, const SiegelPoint& p);
BoundaryPoint frame_boundary_to_ball(const MapDescriptor& f, const BoundaryPoint& siegel_point);
BoundaryPoint frame_boundary_to_siegel(const MapDescriptor& f, const BoundaryPoint& ball_point);
BallPoint evaluate_ball(const MapDescriptor& f, const BallPoint& p);

struct InverseResult {
    CVector point;
    bool in_domain = false;
};

/// (z / A - B w^2 / (A C^2), w / C); the result may leave H^2.
InverseResult quadratic_inverse(const QuadraticSiegel& f, const CVector& coords);
CVector quadratic_iterate_closed(const QuadraticSiegel& f, int n, const CVector& coords);
/// (phi^n(z - w^2) + w^2, w).
CVector lifted_iterate_closed(const Lifted& f, int n, const CVector& coords);

/// Global inverse for families that have one (quadratic, diagonal, affine
/// lifts, conjugates of those); nullopt otherwise.
std::optional<InverseResult> closed_form_inverse(const MapDescriptor& f, const CVector& coords);

enum class MapType { hyperbolic, elliptic, parabolic_excluded, degenerate_projection, zero_map, identity };
std::string to_string(MapType t);

/// Fixed points in closed form.
///   boundary_curve: { (i y0 + r^2, r u) : r real }, u a unit complex number.
///   interior_line:  { (z, 0) : Re z > 0 }.
struct FixedPointSet {
    enum class Kind { none, origin_and_infinity, interior_line, boundary_curve, all_points, unknown };
    Kind kind = Kind::unknown;
    double y0 = 0.0;
    Complex direction = 1.0;

    /// Point of a boundary curve at parameter r.
    CVector curve_point(double r) const;
};
std::string to_string(FixedPointSet::Kind k);

struct ClassificationReport {
    bool is_self_map = false;
    std::optional<MapType> type;
    std::optional<BoundaryPoint> denjoy_wolff;
    std::optional<SiegelPoint> interior_fixed_point;
    std::optional<double> multiplier_at_dw;
    std::optional<BoundaryPoint> brfp;
    std::optional<double> brfp_multiplier;
    FixedPointSet fixed_point_set;
    std::string note;
};

ClassificationReport classify_quadratic(double A, Complex B, Complex C);
ClassificationReport classify(const MapDescriptor& f);

/// Validates that phi is a half-plane map with Denjoy-Wolff point at infinity.
MapDescriptor lift_one_dim(const OneDimMap& phi);
FixedPointSet known_brfp_set(const MapDescriptor& f);

struct ExpandableData {
    double alpha = 1.0;
    CVector A;     // tangential diagonal
    CVector omega; // a_jj / sqrt(alpha) on rotating coordinates, 1 elsewhere
    int L = 0;
    std::vector<bool> rotating;
};

/// Expansion at the Siegel origin; throws NotExpandable for other families.
ExpandableData expandable_decompose(const MapDescriptor& f);

} // namespace siegel
