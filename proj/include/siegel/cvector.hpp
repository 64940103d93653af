#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace siegel {

using Complex = std::complex<double>;

/// A point of C^N stored as N complex coordinates.
class CVector {
  public:
    CVector() = default;
    explicit CVector(std::size_t dim) : coords_(dim) {}
    CVector(std::initializer_list<Complex> init) : coords_(init) {}
    explicit CVector(std::vector<Complex> coords) : coords_(std::move(coords)) {}

    std::size_t size() const { return coords_.size(); }
    bool empty() const { return coords_.empty(); }

    Complex& operator[](std::size_t i) { return coords_[i]; }
    const Complex& operator[](std::size_t i) const { return coords_[i]; }

    auto begin() { return coords_.begin(); }
    auto end() { return coords_.end(); }
    auto begin() const { return coords_.begin(); }
    auto end() const { return coords_.end(); }

    std::span<const Complex> view() const { return coords_; }
    const std::vector<Complex>& data() const { return coords_; }

    bool is_finite() const;

    CVector& operator+=(const CVector& other);
    CVector& operator-=(const CVector& other);
    CVector& operator*=(Complex s);

    friend bool operator==(const CVector&, const CVector&) = default;

  private:
    std::vector<Complex> coords_;
};

CVector operator+(CVector a, const CVector& b);
CVector operator-(CVector a, const CVector& b);
CVector operator*(Complex s, CVector a);
CVector operator*(CVector a, Complex s);

/// Hermitian inner product (a, b) = sum a_j conj(b_j).
Complex inner(const CVector& a, const CVector& b);
double norm_sq(const CVector& a);
double norm(const CVector& a);
/// Largest coordinate-wise modulus of a - b.
double max_abs_diff(const CVector& a, const CVector& b);

/// (head, tail...) concatenation used to assemble full Siegel coordinates.
CVector prepend(Complex head, const CVector& tail);
CVector tail(const CVector& v);

} // namespace siegel
