#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "siegel/maps.hpp"
#include "siegel/metrics.hpp"
#include "siegel/solver.hpp"

namespace siegel {

// ---- forward iteration -------------------------------------------------------

struct ForwardOrbit {
    std::vector<SiegelPoint> points;
    std::vector<double> steps; // d(Z_k, Z_{k+1})
    std::optional<BoundaryPoint> dw_estimate;
    std::optional<SiegelPoint> interior_limit;
    bool converged = false;
};

/// Iterates until the orbit is within tol of the sphere (ball picture) or the
/// step falls below tol, or n_max iterations are spent.
ForwardOrbit forward_orbit(const MapDescriptor& f, const SiegelPoint& z0, int n_max, double tol);

// ---- boundary multiplier -----------------------------------------------------

struct MultiplierEstimate {
    double value = 0.0;        // extrapolated radial limit
    double min_ratio = 0.0;    // smallest sampled ratio
    std::vector<double> ratios;
};

/// Radial limit of the defect ratio at q, sampled at parameters decay^k,
/// k = 1..n_samples. Finite q: defect(f(Z)) / defect(Z) along (q_z + s, q_w).
/// Infinity: defect(Z) / defect(f(Z)) along (1/s, 0). Returns +inf when the
/// ratio blows up.
MultiplierEstimate estimate_multiplier(const MapDescriptor& f, const BoundaryPoint& q, double decay = 0.5,
                                       int n_samples = 40);
double multiplier_at_boundary(const MapDescriptor& f, const BoundaryPoint& q, double decay = 0.5,
                              int n_samples = 40);

// ---- backward iteration ------------------------------------------------------

/// Preimage of zn within pseudo-hyperbolic distance a. Among admissible
/// preimages the one with the smallest step wins, ties going to the smaller defect.
SiegelPoint backward_step(const MapDescriptor& f, const SiegelPoint& zn, double a, const SolverPolicy& solver = {});

enum class OrbitStatus { complete, no_backward_step, solver_failure };
std::string to_string(OrbitStatus s);

struct BackwardOrbit {
    std::vector<SiegelPoint> points;
    std::vector<double> steps;   // d(Z_k, Z_{k+1})
    std::vector<double> defects; // t_k
    double step_bound = 0.0;
    std::optional<BoundaryPoint> limit;      // Siegel picture of the map
    std::optional<BoundaryPoint> limit_ball; // ball picture through the map's frame
    double multiplier_estimate = 0.0;
    double koranyi_certificate = 0.0;
    OrbitStatus status = OrbitStatus::complete;
    std::string status_message;
    bool flipped_frame = false; // copied from the map, used for limit_ball
};

BackwardOrbit backward_orbit(const MapDescriptor& f, const SiegelPoint& z0, double a, int n,
                             const SolverPolicy& solver = {});
/// Recomputes limit, multiplier estimate and Koranyi certificate from the points.
void summarize_backward_orbit(BackwardOrbit& orbit);

struct DefectDecayReport {
    bool ok = true;
    std::size_t pairs = 0;
    std::size_t violations = 0;
    double worst_margin = 0.0; // min over pairs of 1 - t_{n+k} / (c^k t_n)
};

/// t_{n+k} <= c^k t_n for every pair, with relative slack 1e-12.
DefectDecayReport verify_defect_decay(const BackwardOrbit& orbit, double c);

// ---- Julia's lemma -----------------------------------------------------------

struct JuliaReport {
    std::size_t samples = 0;
    std::size_t violations = 0;
    double max_tightness = 0.0; // max of ratio(f(P)) / (alpha ratio(P)); <= 1 means inclusion
    double alpha = 0.0;
    std::uint64_t seed = 0;
};

/// Samples horospheres centred at the fixed point X over a log grid of sizes
/// and checks that f maps H(X, R) into H(X, alpha R). At infinity this reads
/// defect(f(P)) >= defect(P) / alpha.
JuliaReport julia_inclusion_check(const MapDescriptor& f, const BoundaryPoint& x, double alpha, int n_samples,
                                  std::uint64_t seed);

// ---- asymptotics -------------------------------------------------------------

struct AsymptoticsReport {
    std::vector<double> re_z_over_t, im_z_over_t, w_sq_over_t, t_ratio, w_sq_over_re_z;
    double alpha = 0.0;
    bool re_ok = false, im_ok = false, w_ok = false, t_ok = false, special = false;
};

/// Ratio sequences of the recentred orbit; limits are checked on the last
/// entry against (1, 0, 0, alpha) within tol.
AsymptoticsReport orbit_asymptotics(const BackwardOrbit& orbit, const SiegelAutomorphism& recenter,
                                    double tol = 1e-6);

// ---- elliptic growth ---------------------------------------------------------

struct EllipticGrowth {
    double c = 0.0;
    bool apparent_non_elliptic = false;
    std::vector<double> radii, max_norm;
};

/// sup over r in [r0, 1) of (1 - r) / (1 - M(r)), M(r) the grid maximum of
/// ||f|| on the sphere of radius r. The grid only under-estimates M(r).
EllipticGrowth elliptic_growth_constant(const MapDescriptor& f, double r0, int n_grid = 64, int n_radii = 32);

// ---- angular derivative ------------------------------------------------------

struct AngularReport {
    std::vector<double> ratio;      // (1 - pi_1(f(Z))) / (1 - pi_1(Z))
    std::vector<double> tangential; // |pi'(f(Z))| / |1 - pi_1(Z)|^{1/2}
    std::vector<std::size_t> rejected;
    bool bounded = false;
    double ratio_limit = 0.0;
    double tangential_limit = 0.0;
};

/// Evaluated in the ball picture where q sits at (1, 0); samples outside the
/// Koranyi region of amplitude M are rejected.
AngularReport angular_ratio_diagnostics(const MapDescriptor& f, const BoundaryPoint& q,
                                        const std::vector<SiegelPoint>& samples, double amplitude = 10.0);

/// (z, w) -> (1/z, w/z): the automorphism of H^N exchanging 0 and infinity.
CVector siegel_inversion(const CVector& coords);

} // namespace siegel
