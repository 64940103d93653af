#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "siegel/dynamics.hpp"

namespace siegel {

enum class ConjugationVariant { basic, expandable };
std::string to_string(ConjugationVariant v);

/// Linear model and projection for a run. Basic: Omega = 1, no rotating
/// coordinates, p(z, w) = (z, 0). Expandable: Omega and the rotating mask
/// come from the expansion at 0, and p keeps the rotating coordinates.
struct ConjugationModel {
    double alpha = 1.0;
    ConjugationVariant variant = ConjugationVariant::basic;
    CVector omega;              // tangential rotation, all ones for basic
    std::vector<bool> rotating; // coordinates kept by the projection
    int L = 0;

    static ConjugationModel basic(double alpha, std::size_t dim);
    static ConjugationModel expandable(const ExpandableData& e);

    /// eta^k(z, w) = (alpha^k z, alpha^{k/2} Omega^k w), k may be negative.
    SiegelAutomorphism eta(int k = 1) const;
    CVector project(const CVector& coords) const;
};

/// 5 log-spaced values of Re z in [0.1, 10] crossed with the tangential
/// offsets {0, +-0.3, +-0.3i} * sqrt(Re z) in the first tangential slot.
std::vector<SiegelPoint> default_grid(std::size_t dim);

/// tau_n = h_n^{-1} o Omega^{-n} o delta_n^{-1}, so that tau_n(1, 0) = Z_n.
SiegelAutomorphism build_tau(const BackwardOrbit& orbit, int n, const ConjugationModel& model);

struct TauDiagnostics {
    std::vector<double> shift_error; // sup_grid d(tau_{n+k}^{-1} tau_n Z, eta_k Z)
    std::vector<double> step_error;  // sup_grid d(tau_{n+1}^{-1} eta^{-1} tau_n Z, Z)
    bool decreasing = false;          // both tails non-increasing beyond the burn-in
};

TauDiagnostics tau_limit_diagnostics(const BackwardOrbit& orbit, const ConjugationModel& model, int k,
                                     const std::vector<SiegelPoint>& grid, int burn_in = 5);

/// Applies an automorphism to every orbit point and recomputes the summary.
BackwardOrbit recenter_orbit(const BackwardOrbit& orbit, const SiegelAutomorphism& by);

/// The construction assumes the orbit tends to the Siegel origin. When the
/// orbit limit is another finite boundary point q, run_conjugation works with
/// the recentred map by o f o by^{-1} and the recentred orbit, by = h_q.
struct ConjugationRun {
    MapDescriptor f; // recentred map
    SiegelAutomorphism recenter;
    BackwardOrbit orbit;
    ConjugationModel model;
    std::vector<SiegelPoint> grid;
    std::vector<std::vector<std::pair<SiegelPoint, SiegelPoint>>> psi_samples; // per n
    std::vector<double> residuals;                                              // per n
    std::vector<double> interp_errors;                                          // per k, at the last n
    std::vector<double> g_errors;                                               // per n
};

/// psi_n(Z) = f^n(tau_n(p(Z))).
SiegelPoint psi_eval(const MapDescriptor& f, const BackwardOrbit& orbit, const ConjugationModel& model, int n,
                     const SiegelPoint& z);
std::vector<std::pair<SiegelPoint, SiegelPoint>> psi_approx(const ConjugationRun& run, int n);
/// max over the grid of d(psi_n(eta Z), f(psi_n(Z))).
double conjugation_residual(const ConjugationRun& run, int n);
/// d(psi_n(a_k), Z_k) for a_k = (alpha^{-k}, 0), k <= k_max.
std::vector<double> psi_interpolation_check(const ConjugationRun& run, int n, int k_max);
/// sup over the grid of d(g_m(Z), p(Z)) with g_m = tau_m^{-1} o psi_n o eta^{-m};
/// grid points whose composition leaves the domain numerically are skipped.
double g_diagnostic(const ConjugationRun& run, int n, int m);

/// Fills samples and residuals for n = 0..n_max (bounded by the orbit length),
/// the interpolation errors at n_max for k <= min(n_max / 2, 10), and g_m
/// against psi_{n_max}.
ConjugationRun run_conjugation(const MapDescriptor& f, BackwardOrbit orbit, const ConjugationModel& model,
                               std::vector<SiegelPoint> grid, int n_max);

struct SpecialConstruction {
    BackwardOrbit orbit;
    double a = 0.0;
    int n0 = 0;
    std::vector<double> axis_displacements; // d(r_k, f(r_k)) along the axis points r_k
};

/// Backward orbit tending to the finite boundary fixed point q with steps at
/// most (alpha - 1)/(alpha + 1) (+1e-9), seeded at the axis point (alpha^{-n0}, 0)
/// of the recentred picture, n0 chosen so that the seed horosphere lies in the
/// Euclidean ball of radius exclusion_radius about q.
SpecialConstruction special_backward_construct(const MapDescriptor& f, const BoundaryPoint& q, double alpha,
                                               double exclusion_radius, int n, const SolverPolicy& solver = {});

} // namespace siegel
