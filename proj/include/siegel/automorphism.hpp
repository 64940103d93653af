#pragma once

#include <variant>
#include <vector>

#include "siegel/points.hpp"

namespace siegel {

/// Heisenberg translation
///   (z, w) -> (z - i y + ||w0||^2 - 2<w, w0>, w - w0),
/// which sends the boundary point (i y + ||w0||^2, w0) to the origin and
/// preserves every defect level set.
struct Translation {
    double y = 0.0;
    CVector w0;
};

/// (z, w) -> (z / t, w / sqrt(t)); divides the defect by t.
struct Dilation {
    double t = 1.0;
};

/// (z, w) -> (z, Omega w), Omega diagonal with unit-modulus entries.
struct Rotation {
    CVector omega;
};

/// (z, w) -> (alpha z, Lambda w) with |Lambda_jj|^2 = alpha.
struct LinearDiag {
    double alpha = 1.0;
    CVector lambda;
};

using Primitive = std::variant<Translation, Dilation, Rotation, LinearDiag>;

/// Element of the group generated by the primitives above, stored as a chain
/// in application order: chain()[0] acts first.
class SiegelAutomorphism {
  public:
    SiegelAutomorphism() = default;

    static SiegelAutomorphism identity() { return {}; }
    static SiegelAutomorphism translation(double y, CVector w0);
    /// Translation sending the finite boundary point q to the origin.
    static SiegelAutomorphism recentering(const CVector& q);
    static SiegelAutomorphism dilation(double t);
    static SiegelAutomorphism rotation(CVector omega);
    static SiegelAutomorphism linear_diag(double alpha, CVector lambda);

    const std::vector<Primitive>& chain() const { return chain_; }
    bool is_identity() const { return chain_.empty(); }

    SiegelPoint apply(const SiegelPoint& p) const;
    /// Acts on raw coordinates; used for boundary points.
    CVector apply_coords(CVector coords) const;

    friend SiegelAutomorphism compose(const SiegelAutomorphism& a, const SiegelAutomorphism& b);
    friend SiegelAutomorphism invert(const SiegelAutomorphism& a);
    friend SiegelAutomorphism build_automorphism(const Primitive& primitive);

  private:
    explicit SiegelAutomorphism(std::vector<Primitive> chain);
    void normalize();

    std::vector<Primitive> chain_;
};

/// Validates a primitive and wraps it as a one-element chain.
SiegelAutomorphism build_automorphism(const Primitive& primitive);
SiegelAutomorphism automorphism_from_chain(const std::vector<Primitive>& chain);
SiegelPoint apply_automorphism(const SiegelAutomorphism& a, const SiegelPoint& p);
/// a after b.
SiegelAutomorphism compose(const SiegelAutomorphism& a, const SiegelAutomorphism& b);
SiegelAutomorphism invert(const SiegelAutomorphism& a);

} // namespace siegel
