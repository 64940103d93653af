#include "siegel/automorphism.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "siegel/errors.hpp"
#include "siegel/numeric_policy.hpp"

namespace siegel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_tangential(const CVector& coords, const CVector& block, const char* who) {
    if (block.size() + 1 != coords.size())
        throw DimensionMismatch(std::string(who) + ": tangential dimension does not match the point");
}

CVector apply_primitive(const Primitive& prim, CVector c) {
    std::visit(overloaded{
                   [&](const Translation& tr) {
                       check_tangential(c, tr.w0, "Translation");
                       const CVector w = tail(c);
                       c[0] = c[0] - Complex(0.0, tr.y) + norm_sq(tr.w0) - 2.0 * inner(w, tr.w0);
                       for (std::size_t j = 0; j < tr.w0.size(); ++j) c[j + 1] -= tr.w0[j];
                   },
                   [&](const Dilation& d) {
                       c[0] /= d.t;
                       const double s = std::sqrt(d.t);
                       for (std::size_t j = 1; j < c.size(); ++j) c[j] /= s;
                   },
                   [&](const Rotation& r) {
                       check_tangential(c, r.omega, "Rotation");
                       for (std::size_t j = 0; j < r.omega.size(); ++j) c[j + 1] *= r.omega[j];
                   },
                   [&](const LinearDiag& l) {
                       check_tangential(c, l.lambda, "LinearDiag");
                       c[0] *= l.alpha;
                       for (std::size_t j = 0; j < l.lambda.size(); ++j) c[j + 1] *= l.lambda[j];
                   },
               },
               prim);
    return c;
}

Primitive inverse_primitive(const Primitive& prim) {
    return std::visit(overloaded{
                          [](const Translation& tr) -> Primitive { return Translation{-tr.y, -1.0 * tr.w0}; },
                          [](const Dilation& d) -> Primitive { return Dilation{1.0 / d.t}; },
                          [](const Rotation& r) -> Primitive {
                              CVector o = r.omega;
                              for (auto& c : o) c = std::conj(c);
                              return Rotation{o};
                          },
                          [](const LinearDiag& l) -> Primitive {
                              CVector lam = l.lambda;
                              for (auto& c : lam) c = 1.0 / c;
                              return LinearDiag{1.0 / l.alpha, lam};
                          },
                      },
                      prim);
}

bool is_identity_primitive(const Primitive& prim) {
    return std::visit(overloaded{
                          [](const Translation& tr) { return tr.y == 0.0 && norm_sq(tr.w0) == 0.0; },
                          [](const Dilation& d) { return d.t == 1.0; },
                          [](const Rotation& r) {
                              for (const auto& c : r.omega)
                                  if (c != Complex(1.0, 0.0)) return false;
                              return true;
                          },
                          [](const LinearDiag& l) {
                              if (l.alpha != 1.0) return false;
                              for (const auto& c : l.lambda)
                                  if (c != Complex(1.0, 0.0)) return false;
                              return true;
                          },
                      },
                      prim);
}

CVector entrywise_product(const CVector& a, const CVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("automorphism composition: dimension mismatch");
    CVector out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
    return out;
}

// Merge `second` applied after `first` when both are of the same kind.
std::optional<Primitive> merge(const Primitive& first, const Primitive& second) {
    if (first.index() != second.index()) return std::nullopt;
    if (const auto* b = std::get_if<Translation>(&first)) {
        const auto& a = std::get<Translation>(second);
        if (a.w0.size() != b->w0.size()) throw DimensionMismatch("translation composition: dimension mismatch");
        // h_a o h_b = h_{(y_a + y_b - 2 Im<b, a>, a + b)}
        return Translation{a.y + b->y - 2.0 * inner(b->w0, a.w0).imag(), a.w0 + b->w0};
    }
    if (const auto* b = std::get_if<Dilation>(&first)) return Dilation{b->t * std::get<Dilation>(second).t};
    if (const auto* b = std::get_if<Rotation>(&first))
        return Rotation{entrywise_product(std::get<Rotation>(second).omega, b->omega)};
    const auto& b = std::get<LinearDiag>(first);
    const auto& a = std::get<LinearDiag>(second);
    return LinearDiag{a.alpha * b.alpha, entrywise_product(a.lambda, b.lambda)};
}

void validate(const Primitive& prim) {
    const double tol = numeric_policy().validity_tol;
    std::visit(overloaded{
                   [](const Translation& tr) {
                       if (!std::isfinite(tr.y) || !tr.w0.is_finite())
                           throw InvalidParameter("Translation: non-finite parameters");
                   },
                   [](const Dilation& d) {
                       if (!(d.t > 0.0) || !std::isfinite(d.t)) throw InvalidParameter("Dilation: t must be > 0");
                   },
                   [&](const Rotation& r) {
                       for (const auto& c : r.omega)
                           if (std::abs(std::abs(c) - 1.0) > tol)
                               throw InvalidParameter("Rotation: entries must have unit modulus");
                   },
                   [&](const LinearDiag& l) {
                       if (!(l.alpha > 0.0) || !std::isfinite(l.alpha))
                           throw InvalidParameter("LinearDiag: alpha must be > 0");
                       for (const auto& c : l.lambda)
                           if (std::abs(std::norm(c) - l.alpha) > tol * l.alpha)
                               throw InvalidParameter("LinearDiag: |lambda_j|^2 must equal alpha");
                   },
               },
               prim);
}

} // namespace

SiegelAutomorphism::SiegelAutomorphism(std::vector<Primitive> chain) : chain_(std::move(chain)) { normalize(); }

void SiegelAutomorphism::normalize() {
    std::vector<Primitive> out;
    out.reserve(chain_.size());
    for (auto& prim : chain_) {
        if (!out.empty()) {
            if (auto merged = merge(out.back(), prim)) {
                out.back() = std::move(*merged);
                if (is_identity_primitive(out.back())) out.pop_back();
                continue;
            }
        }
        if (!is_identity_primitive(prim)) out.push_back(std::move(prim));
    }
    chain_ = std::move(out);
}

SiegelAutomorphism build_automorphism(const Primitive& primitive) {
    validate(primitive);
    return SiegelAutomorphism(std::vector<Primitive>{primitive});
}

SiegelAutomorphism automorphism_from_chain(const std::vector<Primitive>& chain) {
    SiegelAutomorphism out;
    for (const auto& p : chain) out = compose(build_automorphism(p), out);
    return out;
}

SiegelAutomorphism SiegelAutomorphism::translation(double y, CVector w0) {
    return build_automorphism(Translation{y, std::move(w0)});
}

SiegelAutomorphism SiegelAutomorphism::recentering(const CVector& q) {
    if (q.empty()) throw InvalidParameter("recentering: empty point");
    return translation(q[0].imag(), tail(q));
}

SiegelAutomorphism SiegelAutomorphism::dilation(double t) { return build_automorphism(Dilation{t}); }

SiegelAutomorphism SiegelAutomorphism::rotation(CVector omega) { return build_automorphism(Rotation{std::move(omega)}); }

SiegelAutomorphism SiegelAutomorphism::linear_diag(double alpha, CVector lambda) {
    return build_automorphism(LinearDiag{alpha, std::move(lambda)});
}

CVector SiegelAutomorphism::apply_coords(CVector coords) const {
    for (const auto& prim : chain_) coords = apply_primitive(prim, std::move(coords));
    return coords;
}

SiegelPoint SiegelAutomorphism::apply(const SiegelPoint& p) const {
    // The defect is carried along exactly: recomputing it from the image
    // coordinates loses eps |z| / t when the image sits near the boundary.
    double t = p.defect();
    for (const auto& prim : chain_)
        std::visit(overloaded{
                       [](const Translation&) {},
                       [&](const Dilation& d) { t /= d.t; },
                       [](const Rotation&) {},
                       [&](const LinearDiag& l) { t *= l.alpha; },
                   },
                   prim);
    const CVector c = apply_coords(p.coords());
    return SiegelPoint::with_defect(c[0], tail(c), t);
}

SiegelPoint apply_automorphism(const SiegelAutomorphism& a, const SiegelPoint& p) { return a.apply(p); }

SiegelAutomorphism compose(const SiegelAutomorphism& a, const SiegelAutomorphism& b) {
    std::vector<Primitive> chain = b.chain_;
    chain.insert(chain.end(), a.chain_.begin(), a.chain_.end());
    return SiegelAutomorphism(std::move(chain));
}

SiegelAutomorphism invert(const SiegelAutomorphism& a) {
    std::vector<Primitive> chain;
    chain.reserve(a.chain_.size());
    for (auto it = a.chain_.rbegin(); it != a.chain_.rend(); ++it) chain.push_back(inverse_primitive(*it));
    return SiegelAutomorphism(std::move(chain));
}

} // namespace siegel
