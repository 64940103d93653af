#pragma once

#include "siegel/maps.hpp"

namespace siegel {

struct SolverPolicy {
    bool use_closed_form = true;
    double residual_tol = 1e-11; // on the component-wise scaled residual
    int max_iterations = 100;
    int max_halvings = 30;
    double fd_relative_step = 1e-6;
};

struct NewtonResult {
    CVector point;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Damped Newton for f(Z) = target on the 2N real unknowns, Jacobian by
/// central differences. The residual of coordinate j is measured relative to
/// the natural scale of the target near its boundary projection:
/// max(|z|, t) for z and max(|w_j|, sqrt t) for w_j.
NewtonResult newton_preimage(const MapDescriptor& f, const SiegelPoint& target, const CVector& seed,
                             const SolverPolicy& policy = {});

} // namespace siegel
