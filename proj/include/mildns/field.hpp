#pragma once

#include "mildns/grid.hpp"

#include <complex>
#include <span>
#include <vector>

namespace mildns::spectral {

using Complex = std::complex<double>;

/// Real samples on the physical grid, row-major like the coefficients.
struct PhysicalField {
    GridSpec grid;
    std::vector<double> values;

    explicit PhysicalField(const GridSpec& g) : grid(g), values(g.size(), 0.0) {}
    PhysicalField(const GridSpec& g, std::vector<double> v);
};

/// Periodic real scalar field stored as Fourier coefficients.
///
/// Convention: u(x) = sum_k c(k) exp(i k.x) and
/// c(k) = N^{-d} sum_x u(x) exp(-i k.x), so c(0) is the mean of u and
/// ||u||_2^2 = L^d sum_k |c(k)|^2.
class SpectralField {
public:
    explicit SpectralField(const GridSpec& grid);
    SpectralField(const GridSpec& grid, std::vector<Complex> coeffs);

    const GridSpec& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    std::span<Complex> coeffs() noexcept { return coeffs_; }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    Complex& operator[](std::size_t i) noexcept { return coeffs_[i]; }
    const Complex& operator[](std::size_t i) const noexcept { return coeffs_[i]; }

    Complex mean() const noexcept { return coeffs_[0]; }
    /// Largest coefficient modulus.
    double max_abs() const noexcept;
    /// Largest |c(k) - conj(c(-k))|, zero for a real field.
    double hermitian_defect() const noexcept;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double a) noexcept;

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

private:
    GridSpec grid_;
    std::vector<Complex> coeffs_;
};

/// d-component vector field on a shared grid.
class VectorField {
public:
    explicit VectorField(const GridSpec& grid);
    explicit VectorField(std::vector<SpectralField> components);

    const GridSpec& grid() const noexcept { return components_.front().grid(); }
    int dim() const noexcept { return static_cast<int>(components_.size()); }

    SpectralField& operator[](int i) noexcept { return components_[i]; }
    const SpectralField& operator[](int i) const noexcept { return components_[i]; }

    double max_abs() const noexcept;

    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);
    VectorField& operator*=(double a) noexcept;

    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(double a, VectorField f) { return f *= a; }

private:
    std::vector<SpectralField> components_;
};

/// d x d tensor field, entry (i, j) at index i * d + j.
class TensorField {
public:
    explicit TensorField(const GridSpec& grid);

    const GridSpec& grid() const noexcept { return entries_.front().grid(); }
    int dim() const noexcept { return dim_; }

    SpectralField& operator()(int i, int j) noexcept { return entries_[i * dim_ + j]; }
    const SpectralField& operator()(int i, int j) const noexcept {
        return entries_[i * dim_ + j];
    }

private:
    int dim_;
    std::vector<SpectralField> entries_;
};

void require_same_grid(const GridSpec& a, const GridSpec& b);

} // namespace mildns::spectral
