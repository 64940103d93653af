#include "siegel/one_dim.hpp"

#include <cmath>

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
} // namespace

OneDimModel one_dim_model(const OneDimMap& m) {
    return (std::holds_alternative<HalfPlaneLinear>(m) || std::holds_alternative<HalfPlaneAffine>(m))
               ? OneDimModel::half_plane
               : OneDimModel::disk;
}

void validate_one_dim(const OneDimMap& m) {
    std::visit(overloaded{
                   [](const HalfPlaneLinear& p) {
                       if (!(p.c > 0.0) || p.c == 1.0 || !std::isfinite(p.c))
                           throw InvalidDescriptor("HalfPlaneLinear: c must be positive and different from 1");
                   },
                   [](const HalfPlaneAffine& p) {
                       if (!(p.c > 0.0) || !std::isfinite(p.c))
                           throw InvalidDescriptor("HalfPlaneAffine: c must be positive");
                       if (p.b.real() < 0.0 || !std::isfinite(p.b.real()) || !std::isfinite(p.b.imag()))
                           throw InvalidDescriptor("HalfPlaneAffine: Re b must be >= 0");
                   },
                   [](const BlaschkeDeg2& p) {
                       if (!(p.a > 0.0 && p.a < 1.0)) throw InvalidDescriptor("BlaschkeDeg2: a must lie in (0, 1)");
                   },
                   [](const DiskScale& p) {
                       if (!(std::abs(p.s) <= 1.0 + numeric_policy().validity_tol))
                           throw InvalidDescriptor("DiskScale: |s| must be <= 1");
                   },
               },
               m);
}

Complex evaluate_one_dim(const OneDimMap& m, Complex u) {
    return std::visit(overloaded{
                          [&](const HalfPlaneLinear& p) { return p.c * u; },
                          [&](const HalfPlaneAffine& p) { return p.c * u + p.b; },
                          [&](const BlaschkeDeg2& p) { return u * (u + p.a) / (1.0 + p.a * u); },
                          [&](const DiskScale& p) { return p.s * u; },
                      },
                      m);
}

Complex one_dim_one_minus(const OneDimMap& m, Complex x, Complex one_minus_x) {
    return std::visit(overloaded{
                          [&](const BlaschkeDeg2& p) -> Complex {
                              // 1 + a x - x (x + a) = (1 - x)(1 + x)
                              return one_minus_x * (1.0 + x) / (1.0 + p.a * x);
                          },
                          [&](const DiskScale& p) -> Complex { return (1.0 - p.s) + p.s * one_minus_x; },
                          [&](const auto&) -> Complex {
                              throw InvalidDescriptor("one_dim_one_minus: defined for disk maps only");
                          },
                      },
                      m);
}

Complex one_dim_derivative(const OneDimMap& m, Complex u) {
    return std::visit(overloaded{
                          [&](const HalfPlaneLinear& p) -> Complex { return p.c; },
                          [&](const HalfPlaneAffine& p) -> Complex { return p.c; },
                          [&](const BlaschkeDeg2& p) -> Complex {
                              const Complex d = 1.0 + p.a * u;
                              return ((2.0 * u + p.a) * d - u * (u + p.a) * p.a) / (d * d);
                          },
                          [&](const DiskScale& p) -> Complex { return p.s; },
                      },
                      m);
}

bool is_disk_rotation(const OneDimMap& m) {
    const auto* s = std::get_if<DiskScale>(&m);
    return s != nullptr && std::abs(std::abs(s->s) - 1.0) <= numeric_policy().validity_tol;
}

} // namespace siegel
