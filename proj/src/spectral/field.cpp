#include "mildns/field.hpp"

#include "mildns/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mildns::spectral {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) throw DimensionError("fields live on different grids");
}

PhysicalField::PhysicalField(const GridSpec& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) {
        throw DimensionError("physical sample count does not match grid size");
    }
}

SpectralField::SpectralField(const GridSpec& grid) : grid_(grid), coeffs_(grid.size()) {}

SpectralField::SpectralField(const GridSpec& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.size()) {
        throw DimensionError("coefficient count does not match grid size");
    }
}

double SpectralField::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double SpectralField::hermitian_defect() const noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        m = std::max(m, std::abs(coeffs_[i] - std::conj(coeffs_[grid_.conjugate_index(i)])));
    }
    return m;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) noexcept {
    for (auto& c : coeffs_) c *= a;
    return *this;
}

VectorField::VectorField(const GridSpec& grid) {
    components_.reserve(grid.dim());
    for (int i = 0; i < grid.dim(); ++i) components_.emplace_back(grid);
}

VectorField::VectorField(std::vector<SpectralField> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw DimensionError("vector field needs components");
    const auto& g = components_.front().grid();
    if (static_cast<int>(components_.size()) != g.dim()) {
        throw DimensionError("vector field component count must equal grid dimension");
    }
    for (const auto& c : components_) require_same_grid(g, c.grid());
}

double VectorField::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& c : components_) m = std::max(m, c.max_abs());
    return m;
}

VectorField& VectorField::operator+=(const VectorField& other) {
    require_same_grid(grid(), other.grid());
    for (int i = 0; i < dim(); ++i) components_[i] += other.components_[i];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
    require_same_grid(grid(), other.grid());
    for (int i = 0; i < dim(); ++i) components_[i] -= other.components_[i];
    return *this;
}

VectorField& VectorField::operator*=(double a) noexcept {
    for (auto& c : components_) c *= a;
    return *this;
}

TensorField::TensorField(const GridSpec& grid) : dim_(grid.dim()) {
    entries_.reserve(static_cast<std::size_t>(dim_) * dim_);
    for (int i = 0; i < dim_ * dim_; ++i) entries_.emplace_back(grid);
}

} // namespace mildns::spectral
