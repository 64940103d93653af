#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "siegel/dynamics.hpp"
#include "siegel/sampling.hpp"
#include "siegel/serialize.hpp"

namespace siegel {

/// Outcome of one sampled property: how many samples, how many failed, and
/// the worst value of the checked quantity.
struct PropertyResult {
    std::size_t samples = 0;
    std::size_t violations = 0;
    double worst = 0.0;

    bool pass() const { return violations == 0 && samples > 0; }
};

/// |dist_siegel(P, Q) - dist_ball(C^{-1}P, C^{-1}Q)| < tol.
PropertyResult check_metric_consistency(Rng& rng, std::size_t n_pairs, std::size_t dim, double tol = 1e-12);
/// |dist(aP, aQ) - dist(P, Q)| < tol for random primitive chains a.
PropertyResult check_automorphism_isometry(Rng& rng, std::size_t n_pairs, std::size_t dim, double tol = 1e-12);
/// (1 - ||W||)/(1 - ||Z||) <= (1 + d)/(1 - d ||Z||) with d = dist_ball(Z, W).
PropertyResult check_distance_ratio_bound(Rng& rng, std::size_t n_pairs, std::size_t dim);
/// Ball horosphere at (1, 0) of radius R against Siegel { defect > 1/R } through Cayley.
PropertyResult check_horosphere_correspondence(Rng& rng, std::size_t n_points, std::size_t dim);
/// Scalar and AVX2 batch kernels agree bit for bit and match dist_siegel to 1e-15.
PropertyResult check_kernel_equivalence(Rng& rng, std::size_t n_pairs);
/// Closed-form iterate vs repeated evaluation, deviation |dx| / max(1, |x|).
PropertyResult check_quadratic_iterates(Rng& rng, std::size_t n_maps, std::size_t n_points, int n_max,
                                        double tol = 1e-10);
/// evaluate(quadratic_inverse(P)) = P, deviation |dx| / max(1, |x|).
PropertyResult check_quadratic_inverse(Rng& rng, std::size_t n_points, double tol = 1e-12);
/// Random valid points map to valid points.
PropertyResult check_self_map_closure(const MapDescriptor& f, Rng& rng, std::size_t n_points);
/// f(Z_{k+1}) = Z_k to tol, relative to max(1, |Z_k|).
PropertyResult check_orbit_exactness(const MapDescriptor& f, const BackwardOrbit& orbit, double tol = 1e-10);

/// Random self-map of H^2 in the quadratic family.
QuadraticSiegel random_quadratic(Rng& rng);
/// Random chain of primitives on H^dim.
SiegelAutomorphism random_automorphism(Rng& rng, std::size_t dim);

/// A bundled map with the data needed to check its orbit.
struct Fixture {
    std::string name;
    Json map_json;
    CVector start;
    double a = 0.34;
    int n = 40;
    std::optional<BoundaryPoint> brfp;
    double alpha = 0.0;
    std::optional<BoundaryPoint> dw;
    std::optional<double> c;      // multiplier at the Denjoy-Wolff point
    std::optional<double> growth_r0; // elliptic fixtures: r0 for c(r0)
};

Fixture fixture_from_json(const Json& j);
Json to_json(const Fixture& f);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::size_t samples = 0;
    std::size_t violations = 0;
    double worst = 0.0;
    std::string detail;
};

struct SuiteOptions {
    std::size_t property_samples = 2000;
    int julia_samples = 2000;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

/// Every invariant suite: global properties of the geometry and maps, then
/// per-fixture orbit, multiplier, Julia and asymptotics checks. Each check
/// draws from its own generator seeded from (seed, check index).
SuiteReport run_verify_suite(const std::vector<Fixture>& fixtures, std::uint64_t seed, const SuiteOptions& opts = {});
/// Records a fixture that could not be loaded as a failed check.
CheckResult failed_load(const std::string& source, const std::string& why);
Json to_json(const SuiteReport& r);

} // namespace siegel
