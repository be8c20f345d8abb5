#include "mildns/grid.hpp"

#include "mildns/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mildns::spectral {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int mode_of(int i, int n) { return i < n / 2 ? i : i - n; }

} // namespace

GridSpec::GridSpec(int dim, int modes, double length)
    : dim_(dim), modes_(modes), length_(length) {
    if (dim != 2 && dim != 3) {
        throw DomainError("grid dimension must be 2 or 3, got " + std::to_string(dim));
    }
    if (modes < 8 || !is_power_of_two(modes)) {
        throw DomainError("modes per axis must be a power of two >= 8, got " +
                          std::to_string(modes));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw DomainError("box length must be positive and finite");
    }
    size_ = 1;
    for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(modes);

    auto t = std::make_shared<Tables>();
    t->mode.resize(size_ * dim);
    t->k.resize(size_ * dim);
    t->k_odd.resize(size_ * dim);
    t->k2.resize(size_);
    t->k_abs.resize(size_);
    t->k_odd2.resize(size_);
    t->keep.resize(size_);
    t->conj.resize(size_);

    const double k0 = 2.0 * std::numbers::pi / length;
    std::array<int, 3> idx{0, 0, 0};
    for (std::size_t flat = 0; flat < size_; ++flat) {
        std::size_t rem = flat;
        for (int a = dim - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(rem % modes);
            rem /= modes;
        }
        double k2 = 0.0;
        double k_odd2 = 0.0;
        bool keep = true;
        std::size_t conj = 0;
        for (int a = 0; a < dim; ++a) {
            const int m = mode_of(idx[a], modes);
            const double k = k0 * m;
            const double k_odd = (m == -modes / 2) ? 0.0 : k;
            t->mode[flat * dim + a] = m;
            t->k[flat * dim + a] = k;
            t->k_odd[flat * dim + a] = k_odd;
            k2 += k * k;
            k_odd2 += k_odd * k_odd;
            if (3 * std::abs(m) >= modes) keep = false;
            conj = conj * modes + static_cast<std::size_t>((modes - idx[a]) % modes);
        }
        t->k2[flat] = k2;
        t->k_abs[flat] = std::sqrt(k2);
        t->k_odd2[flat] = k_odd2;
        t->keep[flat] = keep ? 1 : 0;
        t->conj[flat] = conj;
    }
    tables_ = std::move(t);
}

double GridSpec::cell_volume() const noexcept { return std::pow(spacing(), dim_); }

double GridSpec::volume() const noexcept { return std::pow(length_, dim_); }

double GridSpec::fundamental() const noexcept { return 2.0 * std::numbers::pi / length_; }

double GridSpec::max_wavenumber() const noexcept {
    return std::numbers::pi * modes_ / length_;
}

bool GridSpec::is_nyquist(std::size_t flat) const noexcept {
    for (int a = 0; a < dim_; ++a) {
        if (mode_index(flat, a) == -modes_ / 2) return true;
    }
    return false;
}

std::size_t GridSpec::flat_index(const std::array<int, 3>& m) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) {
        if (m[a] < -modes_ / 2 || m[a] >= modes_ / 2) {
            throw DomainError("mode index out of range for grid");
        }
        const int i = (m[a] + modes_) % modes_;
        flat = flat * modes_ + static_cast<std::size_t>(i);
    }
    return flat;
}

double GridSpec::coordinate(std::size_t flat, int axis) const noexcept {
    std::size_t rem = flat;
    for (int a = dim_ - 1; a > axis; --a) rem /= modes_;
    return static_cast<double>(rem % modes_) * spacing();
}

} // namespace mildns::spectral
