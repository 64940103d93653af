#pragma once

namespace siegel {

/// Tolerances shared by every module. One process-wide record; reports embed
/// a copy so that results can be reproduced.
struct NumericPolicy {
    double validity_tol = 1e-12;       // domain membership, boundary detection
    double isometry_tol = 1e-12;       // automorphism / metric consistency checks
    double orbit_exactness_tol = 1e-10;
    double iterate_tol = 1e-10;
};

NumericPolicy& numeric_policy();

} // namespace siegel
