#include "siegel/points.hpp"

#include <cmath>
#include <string>

#include "siegel/errors.hpp"
#include "siegel/numeric_policy.hpp"

namespace siegel {

BallPoint::BallPoint(CVector v) : v_(std::move(v)) {
    if (v_.empty()) throw InvalidParameter("BallPoint: dimension must be at least 1");
    if (!v_.is_finite()) throw DomainError("BallPoint: non-finite coordinate");
    if (!(norm_sq(v_) < 1.0)) throw DomainError("BallPoint: norm must be < 1");
}

SiegelPoint::SiegelPoint(Complex z, CVector w) : z_(z), w_(std::move(w)) {
    if (!std::isfinite(z_.real()) || !std::isfinite(z_.imag()) || !w_.is_finite())
        throw DomainError("SiegelPoint: non-finite coordinate");
    t_ = z_.real() - norm_sq(w_);
    if (!(t_ > 0.0)) throw DomainError("SiegelPoint: defect Re z - ||w||^2 must be > 0");
}

SiegelPoint SiegelPoint::with_defect(Complex z, CVector w, double t) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !w.is_finite() || !std::isfinite(t))
        throw DomainError("SiegelPoint: non-finite coordinate");
    if (!(t > 0.0)) throw DomainError("SiegelPoint: defect must be > 0");
    SiegelPoint p;
    p.z_ = z;
    p.w_ = std::move(w);
    p.t_ = t;
    p.tracked_ = true;
    return p;
}

SiegelPoint SiegelPoint::from_coords(const CVector& coords) {
    if (coords.empty()) throw InvalidParameter("SiegelPoint: dimension must be at least 1");
    return SiegelPoint(coords[0], tail(coords));
}

double defect_of(const CVector& coords) {
    if (coords.empty()) throw InvalidParameter("defect: empty coordinates");
    return coords[0].real() - norm_sq(tail(coords));
}

bool in_siegel_domain(const CVector& coords) {
    return !coords.empty() && coords.is_finite() && defect_of(coords) > 0.0;
}

BoundaryPoint BoundaryPoint::ball(CVector v) {
    if (v.empty() || !v.is_finite()) throw InvalidParameter("BoundaryPoint: invalid coordinates");
    if (std::abs(norm(v) - 1.0) > numeric_policy().validity_tol)
        throw DomainError("BoundaryPoint: ball boundary point must have unit norm");
    return BoundaryPoint(Model::ball, std::move(v), false);
}

BoundaryPoint BoundaryPoint::siegel(CVector v) {
    if (v.empty() || !v.is_finite()) throw InvalidParameter("BoundaryPoint: invalid coordinates");
    if (std::abs(defect_of(v)) > numeric_policy().validity_tol)
        throw DomainError("BoundaryPoint: Siegel boundary point must have zero defect");
    return BoundaryPoint(Model::siegel, std::move(v), false);
}

BoundaryPoint BoundaryPoint::siegel_infinity(std::size_t dim) {
    if (dim == 0) throw InvalidParameter("BoundaryPoint: dimension must be at least 1");
    return BoundaryPoint(Model::siegel, CVector(dim), true);
}

SiegelPoint cayley_to_siegel(const BallPoint& p) {
    const Complex z = p.v()[0];
    const Complex denom = 1.0 - z;
    CVector w = tail(p.v());
    for (auto& c : w) c /= denom;
    return SiegelPoint((1.0 + z) / denom, std::move(w));
}

BallPoint siegel_to_ball(const SiegelPoint& p) {
    const Complex denom = p.z() + 1.0;
    CVector w = p.w();
    for (auto& c : w) c = 2.0 * c / denom;
    return BallPoint(prepend((p.z() - 1.0) / denom, w));
}

namespace {
CVector reflect_first(CVector v) {
    v[0] = -v[0];
    return v;
}
} // namespace

SiegelPoint cayley_flipped_to_siegel(const BallPoint& p) { return cayley_to_siegel(BallPoint(reflect_first(p.v()))); }

BallPoint siegel_to_ball_flipped(const SiegelPoint& p) { return BallPoint(reflect_first(siegel_to_ball(p).v())); }

BoundaryPoint boundary_to_ball(const BoundaryPoint& q) {
    if (q.model() != Model::siegel) throw ModelMismatch("boundary_to_ball: expected a Siegel boundary point");
    CVector out(q.dim());
    if (q.at_infinity()) {
        out[0] = 1.0;
        return BoundaryPoint::ball(out);
    }
    const Complex denom = q.v()[0] + 1.0;
    out[0] = (q.v()[0] - 1.0) / denom;
    for (std::size_t j = 1; j < q.dim(); ++j) out[j] = 2.0 * q.v()[j] / denom;
    // Renormalize away rounding so the unit-norm invariant holds.
    out *= 1.0 / norm(out);
    return BoundaryPoint::ball(out);
}

BoundaryPoint boundary_to_siegel(const BoundaryPoint& q) {
    if (q.model() != Model::ball) throw ModelMismatch("boundary_to_siegel: expected a ball boundary point");
    const Complex z = q.v()[0];
    const Complex denom = 1.0 - z;
    if (std::abs(denom) <= numeric_policy().validity_tol) return BoundaryPoint::siegel_infinity(q.dim());
    CVector out(q.dim());
    out[0] = (1.0 + z) / denom;
    for (std::size_t j = 1; j < q.dim(); ++j) out[j] = q.v()[j] / denom;
    // Project onto the boundary: Re z = ||w||^2.
    out[0] = Complex(norm_sq(tail(out)), out[0].imag());
    return BoundaryPoint::siegel(out);
}

double ball_one_minus_norm_sq(const SiegelPoint& p) { return 4.0 * p.defect() / std::norm(p.z() + 1.0); }

Complex ball_one_minus_inner(const SiegelPoint& p, const CVector& q) {
    if (q.size() != p.dim()) throw DimensionMismatch("ball_one_minus_inner: dimension mismatch");
    const Complex qz = q[0];
    const Complex num = 2.0 * (p.z() + std::conj(qz) - 2.0 * inner(p.w(), tail(q)));
    return num / ((p.z() + 1.0) * (std::conj(qz) + 1.0));
}

} // namespace siegel
