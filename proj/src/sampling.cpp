#include "siegel/sampling.hpp"

#include <cmath>
#include <numbers>

namespace siegel {

double Rng::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

CVector random_unit_vector(Rng& rng, std::size_t dim) {
    CVector v(dim);
    double n = 0.0;
    while (n < 1e-300) {
        for (auto& c : v) c = rng.complex_normal();
        n = norm(v);
    }
    return (1.0 / n) * v;
}

SiegelPoint random_siegel_point(Rng& rng, std::size_t dim) {
    CVector w(dim - 1);
    const double wscale = rng.log_uniform(1e-2, 3.0);
    for (auto& c : w) c = wscale * rng.complex_normal();
    const double t = rng.log_uniform(1e-4, 1e2);
    const double y = rng.normal() * rng.log_uniform(1e-2, 1e1);
    return SiegelPoint(Complex(t + norm_sq(w), y), w);
}

BallPoint random_ball_point(Rng& rng, std::size_t dim) {
    const CVector dir = random_unit_vector(rng, dim);
    double r;
    if (rng.uniform() < 0.5)
        r = std::pow(rng.uniform(), 1.0 / (2.0 * static_cast<double>(dim)));
    else
        r = 1.0 - rng.log_uniform(1e-8, 1.0);
    r = std::min(r, 1.0 - 1e-15);
    return BallPoint(r * dir);
}

} // namespace siegel
