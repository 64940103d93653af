#pragma once

#include <cstdint>
#include <random>

#include "siegel/points.hpp"

namespace siegel {

/// Deterministic generator: mt19937_64 plus explicit transforms, so draws do
/// not depend on the standard library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal (Box-Muller).
    double normal();
    Complex complex_normal() { return {normal(), normal()}; }
    /// exp of a uniform draw in [log_lo, log_hi].
    double log_uniform(double lo, double hi);

  private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

/// Random point of H^N with defects spread over many scales.
SiegelPoint random_siegel_point(Rng& rng, std::size_t dim);
/// Random point of B^N; half the draws crowd the sphere.
BallPoint random_ball_point(Rng& rng, std::size_t dim);
/// Uniform direction on the unit sphere of C^N.
CVector random_unit_vector(Rng& rng, std::size_t dim);

} // namespace siegel
