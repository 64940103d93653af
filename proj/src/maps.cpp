#include "siegel/maps.hpp"

#include <cmath>
#include <numbers>

#include "siegel/errors.hpp"
#include "siegel/numeric_policy.hpp"

namespace siegel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool near(double x, double y) {
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    return std::abs(x - y) <= numeric_policy().validity_tol * scale;
}

bool near_c(Complex x, Complex y) {
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    return std::abs(x - y) <= numeric_policy().validity_tol * scale;
}

bool is_zero(Complex x) { return std::abs(x) <= numeric_policy().validity_tol; }

Complex one_dim_inverse_half_plane(const OneDimMap& phi, Complex v) {
    if (const auto* p = std::get_if<HalfPlaneLinear>(&phi)) return v / p->c;
    const auto& p = std::get<HalfPlaneAffine>(phi);
    return (v - p.b) / p.c;
}

void require_dim(const MapDescriptor& f, const CVector& coords) {
    if (coords.size() != f.dim())
        throw DimensionMismatch("map of dimension " + std::to_string(f.dim()) + " applied to point of dimension " +
                                std::to_string(coords.size()));
}

// Siegel picture of a ball product through the flipped Cayley transform:
// x = (1 - z)/(1 + z), v = 2w/(1 + z), and back z' = (1 - X)/(1 + X), w' = V/(1 + X).
CVector ball_product_siegel(const BallProduct& bp, const CVector& c) {
    const Complex z = c[0];
    const Complex x = (1.0 - z) / (1.0 + z);
    const Complex one_minus_x = 2.0 * z / (1.0 + z);
    const Complex one_minus_X = one_dim_one_minus(bp.components[0], x, one_minus_x);
    const Complex one_plus_X = 2.0 - one_minus_X;
    CVector out(c.size());
    out[0] = one_minus_X / one_plus_X;
    for (std::size_t j = 1; j < c.size(); ++j) {
        const Complex v = 2.0 * c[j] / (1.0 + z);
        out[j] = evaluate_one_dim(bp.components[j], v) / one_plus_X;
    }
    return out;
}

} // namespace

// ---- descriptor construction ------------------------------------------------

MapDescriptor MapDescriptor::quadratic(double A, Complex B, Complex C) {
    if (!std::isfinite(A) || !std::isfinite(B.real()) || !std::isfinite(B.imag()) || !std::isfinite(C.real()) ||
        !std::isfinite(C.imag()))
        throw InvalidDescriptor("quadratic: non-finite coefficient");
    if (!(A > 0.0)) throw InvalidDescriptor("quadratic: A must be a positive real number");
    if (A - std::abs(B) < std::norm(C) - numeric_policy().validity_tol * std::max(1.0, A))
        throw InvalidDescriptor("quadratic: A - |B| < |C|^2, not a self-map of H^2");
    return MapDescriptor(QuadraticSiegel{A, B, C});
}

MapDescriptor MapDescriptor::lifted(OneDimMap phi) { return lift_one_dim(phi); }

MapDescriptor MapDescriptor::diagonal_linear(double alpha, CVector lambda) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidDescriptor("diagonal_linear: alpha must be positive");
    if (lambda.empty()) throw InvalidDescriptor("diagonal_linear: empty tangential block");
    for (const auto& l : lambda)
        if (std::norm(l) > alpha * (1.0 + numeric_policy().validity_tol) || !std::isfinite(std::abs(l)))
            throw InvalidDescriptor("diagonal_linear: |Lambda_jj|^2 > alpha, not a self-map");
    return MapDescriptor(DiagonalLinear{alpha, std::move(lambda)});
}

MapDescriptor MapDescriptor::conjugated(const MapDescriptor& base, SiegelAutomorphism by) {
    return MapDescriptor(Conjugated{std::make_shared<const MapDescriptor>(base), std::move(by)});
}

MapDescriptor MapDescriptor::ball_product(std::vector<OneDimMap> components) {
    if (components.empty()) throw InvalidDescriptor("ball_product: no components");
    for (const auto& c : components) {
        if (one_dim_model(c) != OneDimModel::disk) throw InvalidDescriptor("ball_product: components must be disk maps");
        validate_one_dim(c);
    }
    return MapDescriptor(BallProduct{std::move(components)});
}

MapDescriptor MapDescriptor::eta(double alpha, const CVector& omega) {
    return diagonal_linear(alpha, std::sqrt(alpha) * omega);
}

std::size_t MapDescriptor::dim() const {
    return std::visit(overloaded{
                          [](const QuadraticSiegel&) -> std::size_t { return 2; },
                          [](const Lifted&) -> std::size_t { return 2; },
                          [](const DiagonalLinear& d) -> std::size_t { return d.lambda.size() + 1; },
                          [](const Conjugated& c) -> std::size_t { return c.base->dim(); },
                          [](const BallProduct& b) -> std::size_t { return b.components.size(); },
                      },
                      v_);
}

std::string MapDescriptor::family() const {
    static const char* names[] = {"quadratic", "lifted", "diagonal_linear", "conjugated", "ball_product"};
    return names[v_.index()];
}

bool MapDescriptor::flipped_frame() const {
    if (std::holds_alternative<BallProduct>(v_)) return true;
    if (const auto* c = std::get_if<Conjugated>(&v_)) return c->base->flipped_frame();
    return false;
}

// ---- evaluation --------------------------------------------------------------

CVector evaluate_coords(const MapDescriptor& f, const CVector& c) {
    require_dim(f, c);
    return std::visit(overloaded{
                          [&](const QuadraticSiegel& q) {
                              return CVector{q.A * c[0] + q.B * c[1] * c[1], q.C * c[1]};
                          },
                          [&](const Lifted& l) {
                              const Complex w2 = c[1] * c[1];
                              return CVector{evaluate_one_dim(l.phi, c[0] - w2) + w2, c[1]};
                          },
                          [&](const DiagonalLinear& d) {
                              CVector out(c.size());
                              out[0] = d.alpha * c[0];
                              for (std::size_t j = 1; j < c.size(); ++j) out[j] = d.lambda[j - 1] * c[j];
                              return out;
                          },
                          [&](const Conjugated& k) {
                              const CVector inner_pt = invert(k.by).apply_coords(c);
                              return k.by.apply_coords(evaluate_coords(*k.base, inner_pt));
                          },
                          [&](const BallProduct& b) { return ball_product_siegel(b, c); },
                      },
                      f.variant());
}

SiegelPoint evaluate(const MapDescriptor& f, const SiegelPoint& p) {
    return SiegelPoint::from_coords(evaluate_coords(f, p.coords()));
}

SiegelPoint iterate(const MapDescriptor& f, const SiegelPoint& p, int n) {
    SiegelPoint cur = p;
    for (int k = 0; k < n; ++k) cur = evaluate(f, cur);
    return cur;
}

SiegelPoint frame_to_siegel(const MapDescriptor& f, const BallPoint& p) {
    return f.flipped_frame() ? cayley_flipped_to_siegel(p) : cayley_to_siegel(p);
}

BallPoint frame_to_ball(const MapDescriptor& f, const SiegelPoint& p) {
    return f.flipped_frame() ? siegel_to_ball_flipped(p) : siegel_to_ball(p);
}

BoundaryPoint frame_boundary_to_ball(const MapDescriptor& f, const BoundaryPoint& s) {
    BoundaryPoint b = boundary_to_ball(s);
    if (!f.flipped_frame()) return b;
    CVector v = b.v();
    v[0] = -v[0];
    return BoundaryPoint::ball(v);
}

BoundaryPoint frame_boundary_to_siegel(const MapDescriptor& f, const BoundaryPoint& b) {
    if (!f.flipped_frame()) return boundary_to_siegel(b);
    CVector v = b.v();
    v[0] = -v[0];
    return boundary_to_siegel(BoundaryPoint::ball(v));
}

BallPoint evaluate_ball(const MapDescriptor& f, const BallPoint& p) {
    if (const auto* b = std::get_if<BallProduct>(&f.variant())) {
        if (p.dim() != b->components.size()) throw DimensionMismatch("evaluate_ball: dimension mismatch");
        CVector out(p.dim());
        for (std::size_t j = 0; j < p.dim(); ++j) out[j] = evaluate_one_dim(b->components[j], p.v()[j]);
        return BallPoint(out);
    }
    return frame_to_ball(f, evaluate(f, frame_to_siegel(f, p)));
}

// ---- closed forms ------------------------------------------------------------

InverseResult quadratic_inverse(const QuadraticSiegel& f, const CVector& c) {
    if (c.size() != 2) throw DimensionMismatch("quadratic_inverse: point must lie in C^2");
    if (f.A == 0.0 || is_zero(f.C)) throw InvalidParameter("quadratic_inverse: degenerate map (A = 0 or C = 0)");
    const Complex w = c[1] / f.C;
    const Complex z = (c[0] - f.B * w * w) / f.A;
    CVector out{z, w};
    return {out, in_siegel_domain(out)};
}

CVector quadratic_iterate_closed(const QuadraticSiegel& f, int n, const CVector& c) {
    if (c.size() != 2) throw DimensionMismatch("quadratic_iterate_closed: point must lie in C^2");
    if (n < 0) throw InvalidParameter("quadratic_iterate_closed: n must be >= 0");
    const Complex A = f.A;
    const Complex C2 = f.C * f.C;
    const Complex An = std::pow(A, n);
    const Complex C2n = std::pow(C2, n);
    Complex resolvent;
    // Near A = C^2 the quotient (A^n - C^{2n}) / (A - C^2) cancels; the finite
    // geometric sum is the same polynomial and degrades to n A^{n-1} at A = C^2.
    if (std::abs(A - C2) < 0.5 * std::max(std::abs(A), std::abs(C2))) {
        resolvent = 0.0;
        Complex c2j = 1.0;
        for (int j = 0; j < n; ++j) {
            resolvent += std::pow(A, n - 1 - j) * c2j;
            c2j *= C2;
        }
    } else {
        resolvent = (An - C2n) / (A - C2);
    }
    return CVector{An * c[0] + f.B * resolvent * c[1] * c[1], std::pow(f.C, n) * c[1]};
}

CVector lifted_iterate_closed(const Lifted& f, int n, const CVector& c) {
    if (c.size() != 2) throw DimensionMismatch("lifted_iterate_closed: point must lie in C^2");
    if (n < 0) throw InvalidParameter("lifted_iterate_closed: n must be >= 0");
    const Complex w2 = c[1] * c[1];
    Complex u = c[0] - w2;
    for (int k = 0; k < n; ++k) u = evaluate_one_dim(f.phi, u);
    return CVector{u + w2, c[1]};
}

std::optional<InverseResult> closed_form_inverse(const MapDescriptor& f, const CVector& c) {
    require_dim(f, c);
    return std::visit(overloaded{
                          [&](const QuadraticSiegel& q) -> std::optional<InverseResult> {
                              if (is_zero(q.C)) return std::nullopt;
                              return quadratic_inverse(q, c);
                          },
                          [&](const Lifted& l) -> std::optional<InverseResult> {
                              const Complex w2 = c[1] * c[1];
                              CVector out{one_dim_inverse_half_plane(l.phi, c[0] - w2) + w2, c[1]};
                              return InverseResult{out, in_siegel_domain(out)};
                          },
                          [&](const DiagonalLinear& d) -> std::optional<InverseResult> {
                              CVector out(c.size());
                              out[0] = c[0] / d.alpha;
                              for (std::size_t j = 1; j < c.size(); ++j) {
                                  if (is_zero(d.lambda[j - 1])) return std::nullopt;
                                  out[j] = c[j] / d.lambda[j - 1];
                              }
                              return InverseResult{out, in_siegel_domain(out)};
                          },
                          [&](const Conjugated& k) -> std::optional<InverseResult> {
                              auto base = closed_form_inverse(*k.base, invert(k.by).apply_coords(c));
                              if (!base) return std::nullopt;
                              CVector out = k.by.apply_coords(base->point);
                              return InverseResult{out, in_siegel_domain(out)};
                          },
                          [&](const BallProduct&) -> std::optional<InverseResult> { return std::nullopt; },
                      },
                      f.variant());
}

// ---- classification ---------------------------------------------------------

std::string to_string(MapType t) {
    switch (t) {
    case MapType::hyperbolic: return "hyperbolic";
    case MapType::elliptic: return "elliptic";
    case MapType::parabolic_excluded: return "parabolic-excluded";
    case MapType::degenerate_projection: return "degenerate-projection";
    case MapType::zero_map: return "zero-map";
    case MapType::identity: return "identity";
    }
    return "unknown";
}

std::string to_string(FixedPointSet::Kind k) {
    switch (k) {
    case FixedPointSet::Kind::none: return "none";
    case FixedPointSet::Kind::origin_and_infinity: return "origin+infinity";
    case FixedPointSet::Kind::interior_line: return "interior-line";
    case FixedPointSet::Kind::boundary_curve: return "boundary-curve";
    case FixedPointSet::Kind::all_points: return "all-points";
    case FixedPointSet::Kind::unknown: return "unknown";
    }
    return "unknown";
}

CVector FixedPointSet::curve_point(double r) const {
    return CVector{Complex(r * r, y0), r * direction};
}

namespace {

// Shared by every family whose radial part is z -> A z with A != 1.
void fill_hyperbolic(ClassificationReport& r, double A, std::size_t dim) {
    r.type = MapType::hyperbolic;
    if (A < 1.0) {
        r.denjoy_wolff = BoundaryPoint::siegel(CVector(dim));
        r.multiplier_at_dw = A;
        r.brfp = BoundaryPoint::siegel_infinity(dim);
        r.brfp_multiplier = 1.0 / A;
    } else {
        r.denjoy_wolff = BoundaryPoint::siegel_infinity(dim);
        r.multiplier_at_dw = 1.0 / A;
        r.brfp = BoundaryPoint::siegel(CVector(dim));
        r.brfp_multiplier = A;
    }
}

} // namespace

ClassificationReport classify_quadratic(double A, Complex B, Complex C) {
    ClassificationReport r;
    const double tol = numeric_policy().validity_tol;
    if (!std::isfinite(A)) {
        r.note = "A is not finite";
        return r;
    }
    if (A == 0.0 && is_zero(B) && is_zero(C)) {
        r.type = MapType::zero_map;
        r.note = "constant map onto the boundary point 0";
        return r;
    }
    if (!(A > 0.0)) {
        r.note = "A must be a positive real number";
        return r;
    }
    r.is_self_map = A - std::abs(B) >= std::norm(C) - tol * std::max(1.0, A);
    if (!r.is_self_map) {
        r.note = "A - |B| < |C|^2";
        return r;
    }
    using K = FixedPointSet::Kind;
    if (near(A, 1.0) && is_zero(B) && near_c(C, 1.0)) {
        r.type = MapType::identity;
        r.fixed_point_set.kind = K::all_points;
        return r;
    }
    if (is_zero(C)) {
        if (near(A, 1.0)) {
            r.type = MapType::degenerate_projection;
            r.fixed_point_set.kind = K::interior_line;
            r.interior_fixed_point = SiegelPoint(1.0, CVector{0.0});
            r.note = "projection onto the axis; every (z, 0) is fixed";
            return r;
        }
        fill_hyperbolic(r, A, 2);
        r.type = MapType::degenerate_projection;
        r.fixed_point_set.kind = K::origin_and_infinity;
        return r;
    }
    if (near(A, 1.0)) {
        // A = 1 forces B = 0 when C = 1, so here C != 1 and only w = 0 is fixed.
        r.type = MapType::elliptic;
        r.fixed_point_set.kind = K::interior_line;
        r.interior_fixed_point = SiegelPoint(1.0, CVector{0.0});
        r.note = "interior fixed line (z, 0)";
        return r;
    }
    fill_hyperbolic(r, A, 2);
    if (near_c(C, 1.0) && !is_zero(B) && near(A, std::abs(B) + 1.0)) {
        // Fixed boundary points (r^2, r u) with B u^2 = -|B|.
        r.fixed_point_set.kind = K::boundary_curve;
        r.fixed_point_set.y0 = 0.0;
        // u = i * conj(sqrt(B / |B|)), exact for real B
        r.fixed_point_set.direction = Complex(0.0, 1.0) * std::conj(std::sqrt(B / std::abs(B)));
    } else {
        r.fixed_point_set.kind = K::origin_and_infinity;
    }
    return r;
}

ClassificationReport classify(const MapDescriptor& f) {
    using K = FixedPointSet::Kind;
    return std::visit(
        overloaded{
            [&](const QuadraticSiegel& q) { return classify_quadratic(q.A, q.B, q.C); },
            [&](const Lifted& l) {
                ClassificationReport r;
                r.is_self_map = true;
                double c = 1.0;
                Complex b = 0.0;
                if (const auto* p = std::get_if<HalfPlaneLinear>(&l.phi)) c = p->c;
                if (const auto* p = std::get_if<HalfPlaneAffine>(&l.phi)) {
                    c = p->c;
                    b = p->b;
                }
                if (near(c, 1.0)) {
                    if (is_zero(b)) {
                        r.type = MapType::identity;
                        r.fixed_point_set.kind = K::all_points;
                        return r;
                    }
                    r.type = MapType::parabolic_excluded;
                    r.denjoy_wolff = BoundaryPoint::siegel_infinity(2);
                    r.multiplier_at_dw = 1.0;
                    r.fixed_point_set.kind = K::none;
                    return r;
                }
                r.type = MapType::hyperbolic;
                r.denjoy_wolff = BoundaryPoint::siegel_infinity(2);
                r.multiplier_at_dw = 1.0 / c;
                r.fixed_point_set = known_brfp_set(f);
                if (r.fixed_point_set.kind == K::boundary_curve) {
                    r.brfp = BoundaryPoint::siegel(r.fixed_point_set.curve_point(0.0));
                    r.brfp_multiplier = c;
                }
                return r;
            },
            [&](const DiagonalLinear& d) {
                ClassificationReport r;
                r.is_self_map = true;
                bool all_one = true, any_one = false;
                for (const auto& l : d.lambda) {
                    all_one = all_one && near_c(l, 1.0);
                    any_one = any_one || near_c(l, 1.0);
                }
                if (near(d.alpha, 1.0)) {
                    if (all_one) {
                        r.type = MapType::identity;
                        r.fixed_point_set.kind = K::all_points;
                        return r;
                    }
                    r.type = MapType::elliptic;
                    r.interior_fixed_point = SiegelPoint(1.0, CVector(d.lambda.size()));
                    r.fixed_point_set.kind = any_one ? K::unknown : K::interior_line;
                    return r;
                }
                fill_hyperbolic(r, d.alpha, f.dim());
                r.fixed_point_set.kind = K::origin_and_infinity;
                return r;
            },
            [&](const Conjugated& k) {
                ClassificationReport r = classify(*k.base);
                auto move_point = [&](const BoundaryPoint& p) {
                    return p.at_infinity() ? p : BoundaryPoint::siegel(k.by.apply_coords(p.v()));
                };
                if (r.denjoy_wolff) r.denjoy_wolff = move_point(*r.denjoy_wolff);
                if (r.brfp) r.brfp = move_point(*r.brfp);
                if (r.interior_fixed_point) r.interior_fixed_point = k.by.apply(*r.interior_fixed_point);
                if (r.fixed_point_set.kind != K::none && r.fixed_point_set.kind != K::all_points)
                    r.fixed_point_set.kind = K::unknown;
                return r;
            },
            [&](const BallProduct& b) {
                ClassificationReport r;
                r.is_self_map = true;
                r.fixed_point_set.kind = K::unknown;
                for (const auto& c : b.components) {
                    if (is_disk_rotation(c)) {
                        r.note = "unitary on a slice; ellipticity not certified";
                        return r;
                    }
                }
                r.type = MapType::elliptic;
                r.interior_fixed_point = frame_to_siegel(f, BallPoint(CVector(b.components.size())));
                if (const auto* bl = std::get_if<BlaschkeDeg2>(&b.components[0])) {
                    r.brfp = BoundaryPoint::siegel(CVector(b.components.size()));
                    r.brfp_multiplier = 2.0 / (1.0 + bl->a);
                }
                return r;
            },
        },
        f.variant());
}

MapDescriptor lift_one_dim(const OneDimMap& phi) {
    if (one_dim_model(phi) != OneDimModel::half_plane)
        throw InvalidDescriptor("lift_one_dim: phi must be a half-plane map (elliptic disk maps are excluded)");
    validate_one_dim(phi);
    const double c = std::holds_alternative<HalfPlaneLinear>(phi) ? std::get<HalfPlaneLinear>(phi).c
                                                                  : std::get<HalfPlaneAffine>(phi).c;
    if (c < 1.0) throw InvalidDescriptor("lift_one_dim: phi has its Denjoy-Wolff point at 0, not at infinity");
    return MapDescriptor(Lifted{phi});
}

FixedPointSet known_brfp_set(const MapDescriptor& f) {
    using K = FixedPointSet::Kind;
    FixedPointSet s;
    std::visit(overloaded{
                   [&](const QuadraticSiegel&) { s = classify(f).fixed_point_set; },
                   [&](const Lifted& l) {
                       if (std::holds_alternative<HalfPlaneLinear>(l.phi)) {
                           s.kind = K::boundary_curve;
                           return;
                       }
                       const auto& p = std::get<HalfPlaneAffine>(l.phi);
                       if (near(p.c, 1.0) || p.b.real() > 0.0) {
                           s.kind = K::none;
                           return;
                       }
                       // phi fixes i y0 with y0 = Im b / (1 - c).
                       s.kind = K::boundary_curve;
                       s.y0 = p.b.imag() / (1.0 - p.c);
                   },
                   [&](const DiagonalLinear&) { s.kind = K::origin_and_infinity; },
                   [&](const auto&) { s.kind = K::unknown; },
               },
               f.variant());
    return s;
}

ExpandableData expandable_decompose(const MapDescriptor& f) {
    ExpandableData e;
    if (const auto* q = std::get_if<QuadraticSiegel>(&f.variant())) {
        e.alpha = q->A;
        e.A = CVector{q->C};
    } else if (const auto* l = std::get_if<Lifted>(&f.variant()); l && std::holds_alternative<HalfPlaneLinear>(l->phi)) {
        // (c z + (1 - c) w^2, w)
        e.alpha = std::get<HalfPlaneLinear>(l->phi).c;
        e.A = CVector{1.0};
    } else if (const auto* d = std::get_if<DiagonalLinear>(&f.variant())) {
        e.alpha = d->alpha;
        e.A = d->lambda;
    } else {
        throw NotExpandable("expandable_decompose: no closed-form expansion at 0 for family " + f.family());
    }
    if (!(e.alpha > 1.0)) throw NotExpandable("expandable_decompose: 0 is not a repelling fixed point");
    const double tol = numeric_policy().validity_tol;
    e.omega = CVector(e.A.size());
    e.rotating.assign(e.A.size(), false);
    for (std::size_t j = 0; j < e.A.size(); ++j) {
        if (std::abs(std::norm(e.A[j]) - e.alpha) <= tol * e.alpha) {
            e.rotating[j] = true;
            e.omega[j] = e.A[j] / std::sqrt(e.alpha);
            ++e.L;
        } else {
            e.omega[j] = 1.0;
        }
    }
    return e;
}

} // namespace siegel
