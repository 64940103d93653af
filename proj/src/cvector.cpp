#include "siegel/cvector.hpp"

#include <algorithm>
#include <cmath>

#include "siegel/errors.hpp"

namespace siegel {

bool CVector::is_finite() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

CVector& CVector::operator+=(const CVector& other) {
    if (other.size() != size()) throw DimensionMismatch("CVector addition: dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i) coords_[i] += other.coords_[i];
    return *this;
}

CVector& CVector::operator-=(const CVector& other) {
    if (other.size() != size()) throw DimensionMismatch("CVector subtraction: dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i) coords_[i] -= other.coords_[i];
    return *this;
}

CVector& CVector::operator*=(Complex s) {
    for (auto& c : coords_) c *= s;
    return *this;
}

CVector operator+(CVector a, const CVector& b) { return a += b; }
CVector operator-(CVector a, const CVector& b) { return a -= b; }
CVector operator*(Complex s, CVector a) { return a *= s; }
CVector operator*(CVector a, Complex s) { return a *= s; }

Complex inner(const CVector& a, const CVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("inner product: dimension mismatch");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
    return acc;
}

double norm_sq(const CVector& a) {
    double acc = 0.0;
    for (const auto& c : a) acc += std::norm(c);
    return acc;
}

double norm(const CVector& a) { return std::sqrt(norm_sq(a)); }

double max_abs_diff(const CVector& a, const CVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

CVector prepend(Complex head, const CVector& rest) {
    std::vector<Complex> out;
    out.reserve(rest.size() + 1);
    out.push_back(head);
    out.insert(out.end(), rest.begin(), rest.end());
    return CVector(std::move(out));
}

CVector tail(const CVector& v) {
    if (v.empty()) return CVector();
    return CVector(std::vector<Complex>(v.begin() + 1, v.end()));
}

} // namespace siegel
