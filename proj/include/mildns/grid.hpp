#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace mildns::spectral {

/// Uniform periodic grid on the box [0, L)^d with N points per axis.
///
/// Storage is row-major with the last axis fastest. Along each axis the
/// integer mode index m runs over 0, 1, ..., N/2 - 1, -N/2, ..., -1 and the
/// wavenumber is k = (2*pi/L) * m. The mode m = -N/2 is the Nyquist mode: it
/// is its own conjugate partner, so odd symbols (derivatives, Riesz
/// transforms, the Leray projector) use a derivative wavenumber that is zero
/// there. Even symbols (|k|^s, the heat multiplier) use the true wavenumber.
class GridSpec {
public:
    GridSpec(int dim, int modes, double length);

    int dim() const noexcept { return dim_; }
    int modes() const noexcept { return modes_; }
    double length() const noexcept { return length_; }
    std::size_t size() const noexcept { return size_; }

    double spacing() const noexcept { return length_ / modes_; }
    double cell_volume() const noexcept;
    double volume() const noexcept;
    double fundamental() const noexcept;

    int mode_index(std::size_t flat, int axis) const noexcept {
        return tables_->mode[flat * dim_ + axis];
    }
    double wavenumber(std::size_t flat, int axis) const noexcept {
        return tables_->k[flat * dim_ + axis];
    }
    double derivative_wavenumber(std::size_t flat, int axis) const noexcept {
        return tables_->k_odd[flat * dim_ + axis];
    }
    double k_squared(std::size_t flat) const noexcept { return tables_->k2[flat]; }
    double k_norm(std::size_t flat) const noexcept { return tables_->k_abs[flat]; }
    double derivative_k_squared(std::size_t flat) const noexcept {
        return tables_->k_odd2[flat];
    }
    /// True when the mode survives 2/3-rule truncation (3|m_i| < N on every axis).
    bool dealias_keep(std::size_t flat) const noexcept { return tables_->keep[flat] != 0; }
    bool is_nyquist(std::size_t flat) const noexcept;

    /// Flat index of the mode with integer indices m (negative values allowed).
    std::size_t flat_index(const std::array<int, 3>& m) const;
    std::size_t conjugate_index(std::size_t flat) const noexcept {
        return tables_->conj[flat];
    }
    /// Physical coordinate of grid point `flat` along `axis`: i * L / N.
    double coordinate(std::size_t flat, int axis) const noexcept;

    /// Largest resolved |k| on one axis, pi N / L.
    double max_wavenumber() const noexcept;

    friend bool operator==(const GridSpec& a, const GridSpec& b) noexcept {
        return a.dim_ == b.dim_ && a.modes_ == b.modes_ && a.length_ == b.length_;
    }

private:
    struct Tables {
        std::vector<int> mode;
        std::vector<double> k;
        std::vector<double> k_odd;
        std::vector<double> k2;
        std::vector<double> k_abs;
        std::vector<double> k_odd2;
        std::vector<unsigned char> keep;
        std::vector<std::size_t> conj;
    };

    int dim_;
    int modes_;
    double length_;
    std::size_t size_;
    std::shared_ptr<const Tables> tables_;
};

} // namespace mildns::spectral
