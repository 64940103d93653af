#include "siegel/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "siegel/errors.hpp"

namespace siegel {

double dist_ball(const BallPoint& a, const BallPoint& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("dist_ball: dimension mismatch");
    const CVector& z = a.v();
    const CVector& w = b.v();
    double numer = norm_sq(z - w);
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) numer -= std::norm(z[i] * w[j] - z[j] * w[i]);
    numer = std::max(numer, 0.0);
    const double denom = std::norm(1.0 - inner(z, w));
    return std::min(std::sqrt(numer / denom), 1.0);
}

double dist_siegel(const SiegelPoint& p, const SiegelPoint& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("dist_siegel: dimension mismatch");
    const double tp = p.defect();
    const double tq = q.defect();
    const Complex cross = inner(p.w(), q.w());
    const Complex d = p.z() + std::conj(q.z()) - 2.0 * cross;
    const double dw2 = norm_sq(p.w() - q.w());
    // Coordinate differences are more accurate for nearby points read off
    // coordinates; carried defects are better than either.
    const double dt = p.tracked_defect() || q.tracked_defect()
                          ? tp - tq
                          : (p.z().real() - q.z().real()) - (norm_sq(p.w()) - norm_sq(q.w()));
    const double im = (p.z().imag() - q.z().imag()) - 2.0 * cross.imag();
    const double numer = dt * dt + 2.0 * (tp + tq) * dw2 + dw2 * dw2 + im * im;
    return std::min(std::sqrt(numer / std::norm(d)), 1.0);
}

double defect(const SiegelPoint& p) { return p.defect(); }

CVector boundary_projection(const SiegelPoint& p) {
    return prepend(Complex(norm_sq(p.w()), p.z().imag()), p.w());
}

Horosphere Horosphere::ball(BoundaryPoint center, double radius) {
    if (center.model() != Model::ball) throw ModelMismatch("Horosphere::ball: center must be a ball boundary point");
    if (!(radius > 0.0)) throw InvalidParameter("Horosphere: radius must be > 0");
    return Horosphere{HorosphereModel::ball, std::move(center), radius};
}

Horosphere Horosphere::siegel_at_infinity(double level) {
    if (!(level > 0.0)) throw InvalidParameter("Horosphere: level must be > 0");
    return Horosphere{HorosphereModel::siegel_at_infinity, std::nullopt, level};
}

double horosphere_ratio(const BallPoint& z, const BoundaryPoint& x) {
    if (x.model() != Model::ball) throw ModelMismatch("horosphere_ratio: expected a ball boundary point");
    if (x.dim() != z.dim()) throw DimensionMismatch("horosphere_ratio: dimension mismatch");
    return std::norm(1.0 - inner(z.v(), x.v())) / (1.0 - norm_sq(z.v()));
}

double horosphere_ratio_siegel(const SiegelPoint& p, const CVector& q) {
    return std::norm(ball_one_minus_inner(p, q)) / ball_one_minus_norm_sq(p);
}

bool horosphere_contains(const Horosphere& h, const BallPoint& z) {
    if (h.model != HorosphereModel::ball) throw ModelMismatch("horosphere_contains: horosphere is not in the ball model");
    return horosphere_ratio(z, *h.center) < h.size;
}

bool horosphere_contains(const Horosphere& h, const SiegelPoint& p) {
    if (h.model != HorosphereModel::siegel_at_infinity)
        throw ModelMismatch("horosphere_contains: horosphere is not in the Siegel model");
    return p.defect() > h.size;
}

KoranyiRegion::KoranyiRegion(BoundaryPoint v, double m) : vertex(std::move(v)), amplitude(m) {
    if (vertex.model() != Model::ball) throw ModelMismatch("KoranyiRegion: vertex must be a ball boundary point");
    if (!(amplitude > 1.0)) throw InvalidParameter("KoranyiRegion: amplitude must be > 1");
}

double koranyi_ratio(const BallPoint& z, const BoundaryPoint& q) {
    if (q.model() != Model::ball) throw ModelMismatch("koranyi_ratio: expected a ball boundary point");
    return std::abs(1.0 - inner(z.v(), q.v())) / (1.0 - norm(z.v()));
}

double koranyi_ratio_siegel(const SiegelPoint& p, const CVector& q) {
    const double one_minus_sq = ball_one_minus_norm_sq(p);
    const double one_minus_norm = one_minus_sq / (1.0 + std::sqrt(std::max(0.0, 1.0 - one_minus_sq)));
    return std::abs(ball_one_minus_inner(p, q)) / one_minus_norm;
}

bool koranyi_contains(const KoranyiRegion& k, const BallPoint& z) {
    return koranyi_ratio(z, k.vertex) < k.amplitude;
}

NormBounds hyperbolic_ball_extremes(const BallPoint& z, double d) {
    if (!(d >= 0.0 && d < 1.0)) throw InvalidParameter("hyperbolic_ball_extremes: d must lie in [0, 1)");
    const double r = norm(z.v());
    const double lo = std::max(0.0, (r - d) / (1.0 - d * r));
    const double hi = (r + d) / (1.0 + d * r);
    return {lo, hi};
}

} // namespace siegel
