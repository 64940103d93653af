#pragma once

#include <variant>

#include "siegel/cvector.hpp"

namespace siegel {

/// u -> c u on the right half-plane; c > 0, c != 1.
struct HalfPlaneLinear {
    double c = 2.0;
};

/// u -> c u + b on the right half-plane; c > 0, Re b >= 0.
struct HalfPlaneAffine {
    double c = 1.0;
    Complex b = 0.0;
};

/// Degree-2 Blaschke product z -> z (z + a) / (1 + a z) of the disk, a in (0, 1).
/// Fixes 0 and the boundary point 1, where its angular derivative is 2 / (1 + a).
struct BlaschkeDeg2 {
    double a = 0.5;
};

/// z -> s z on the disk, |s| <= 1.
struct DiskScale {
    Complex s = 0.5;
};

using OneDimMap = std::variant<HalfPlaneLinear, HalfPlaneAffine, BlaschkeDeg2, DiskScale>;

enum class OneDimModel { half_plane, disk };

OneDimModel one_dim_model(const OneDimMap& m);
/// Throws InvalidDescriptor when the parameters do not give a self-map.
void validate_one_dim(const OneDimMap& m);
Complex evaluate_one_dim(const OneDimMap& m, Complex u);
/// 1 - b(x) for disk maps, given x and 1 - x separately so that points near
/// the boundary point 1 keep their relative accuracy.
Complex one_dim_one_minus(const OneDimMap& m, Complex x, Complex one_minus_x);
/// Derivative, used by tests and diagnostics.
Complex one_dim_derivative(const OneDimMap& m, Complex u);
/// True for a disk rotation z -> s z with |s| = 1.
bool is_disk_rotation(const OneDimMap& m);

} // namespace siegel
