#include "mildns/operators.hpp"

#include "mildns/errors.hpp"
#include "mildns/fft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mildns::spectral {

namespace {

constexpr Complex I{0.0, 1.0};

void require_mean_zero(const SpectralField& f, const char* op) {
    if (!is_mean_zero(f)) {
        throw ZeroModeError(std::string(op) + " requires a mean-zero field");
    }
}

std::vector<Complex> dealiased_samples(const SpectralField& f) {
    std::vector<Complex> data(f.size());
    const auto& g = f.grid();
    for (std::size_t i = 0; i < data.size(); ++i) {
        data[i] = g.dealias_keep(i) ? f[i] : Complex{};
    }
    inverse(g, data, data);
    return data;
}

SpectralField product_of_samples(const GridSpec& g, const std::vector<Complex>& a,
                                 const std::vector<Complex>& b) {
    std::vector<Complex> data(a.size());
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = a[i].real() * b[i].real();
    forward(g, data, data);
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!g.dealias_keep(i)) data[i] = Complex{};
    }
    return SpectralField(g, std::move(data));
}

} // namespace

bool is_mean_zero(const SpectralField& f) {
    return std::abs(f.mean()) <= 1e-13 * f.max_abs() + 1e-300;
}

bool is_mean_zero(const VectorField& v) {
    for (int i = 0; i < v.dim(); ++i) {
        if (!is_mean_zero(v[i])) return false;
    }
    return true;
}

SpectralField fractional_laplacian(const SpectralField& f, double s) {
    if (s < 0.0) require_mean_zero(f, "fractional Laplacian with negative order");
    const auto& g = f.grid();
    SpectralField out(g);
    for (std::size_t i = 1; i < f.size(); ++i) out[i] = std::pow(g.k_norm(i), s) * f[i];
    return out;
}

SpectralField riesz_transform(const SpectralField& f, int axis) {
    require_mean_zero(f, "Riesz transform");
    const auto& g = f.grid();
    if (axis < 0 || axis >= g.dim()) throw DomainError("Riesz transform axis out of range");
    SpectralField out(g);
    for (std::size_t i = 1; i < f.size(); ++i) {
        const double k2 = g.derivative_k_squared(i);
        if (k2 == 0.0) continue;
        out[i] = I * (g.derivative_wavenumber(i, axis) / std::sqrt(k2)) * f[i];
    }
    return out;
}

VectorField leray_project(const VectorField& v) {
    for (int j = 0; j < v.dim(); ++j) require_mean_zero(v[j], "Leray projection");
    const auto& g = v.grid();
    const int d = v.dim();
    VectorField out(g);
    for (std::size_t i = 1; i < g.size(); ++i) {
        const double k2 = g.derivative_k_squared(i);
        if (k2 == 0.0) {
            for (int j = 0; j < d; ++j) out[j][i] = v[j][i];
            continue;
        }
        Complex kv{};
        for (int l = 0; l < d; ++l) kv += g.derivative_wavenumber(i, l) * v[l][i];
        for (int j = 0; j < d; ++j) {
            out[j][i] = v[j][i] - g.derivative_wavenumber(i, j) * kv / k2;
        }
    }
    return out;
}

SpectralField heat_semigroup(const SpectralField& f, double t) {
    if (!(t >= 0.0)) throw DomainError("heat semigroup requires t >= 0");
    const auto& g = f.grid();
    SpectralField out(g);
    if (t == 0.0) return f;
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::exp(-t * g.k_squared(i)) * f[i];
    return out;
}

VectorField heat_semigroup(const VectorField& v, double t) {
    if (!(t >= 0.0)) throw DomainError("heat semigroup requires t >= 0");
    if (t == 0.0) return v;
    const auto& g = v.grid();
    std::vector<double> multiplier(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) multiplier[i] = std::exp(-t * g.k_squared(i));
    VectorField out(g);
    for (int j = 0; j < v.dim(); ++j) {
        for (std::size_t i = 0; i < g.size(); ++i) out[j][i] = multiplier[i] * v[j][i];
    }
    return out;
}

SpectralField partial_derivative(const SpectralField& f, int axis) {
    const auto& g = f.grid();
    SpectralField out(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = I * g.derivative_wavenumber(i, axis) * f[i];
    }
    return out;
}

SpectralField laplacian(const SpectralField& f) {
    const auto& g = f.grid();
    SpectralField out(g);
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = -g.k_squared(i) * f[i];
    return out;
}

VectorField laplacian(const VectorField& v) {
    VectorField out(v.grid());
    for (int j = 0; j < v.dim(); ++j) out[j] = laplacian(v[j]);
    return out;
}

VectorField gradient(const SpectralField& f) {
    VectorField out(f.grid());
    for (int j = 0; j < f.grid().dim(); ++j) out[j] = partial_derivative(f, j);
    return out;
}

SpectralField divergence(const VectorField& v) {
    const auto& g = v.grid();
    SpectralField out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        Complex acc{};
        for (int j = 0; j < v.dim(); ++j) acc += g.derivative_wavenumber(i, j) * v[j][i];
        out[i] = I * acc;
    }
    return out;
}

VectorField divergence(const TensorField& F) {
    const auto& g = F.grid();
    const int d = F.dim();
    VectorField out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (int r = 0; r < d; ++r) {
            Complex acc{};
            for (int c = 0; c < d; ++c) acc += g.derivative_wavenumber(i, c) * F(r, c)[i];
            out[r][i] = I * acc;
        }
    }
    return out;
}

SpectralField dealias(const SpectralField& f) {
    const auto& g = f.grid();
    SpectralField out(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (g.dealias_keep(i)) out[i] = f[i];
    }
    return out;
}

SpectralField product(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f.grid(), g.grid());
    return product_of_samples(f.grid(), dealiased_samples(f), dealiased_samples(g));
}

TensorField tensor_product(const VectorField& u, const VectorField& v) {
    require_same_grid(u.grid(), v.grid());
    const auto& g = u.grid();
    const int d = u.dim();
    std::vector<std::vector<Complex>> us, vs;
    for (int i = 0; i < d; ++i) us.push_back(dealiased_samples(u[i]));
    const bool same = &u == &v;
    if (!same) {
        for (int i = 0; i < d; ++i) vs.push_back(dealiased_samples(v[i]));
    }
    const auto& vref = same ? us : vs;
    TensorField F(g);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (same && j < i) {
                F(i, j) = F(j, i);
                continue;
            }
            F(i, j) = product_of_samples(g, us[i], vref[j]);
        }
    }
    return F;
}

VectorField nonlinear_term(const VectorField& u, const VectorField& v) {
    require_same_grid(u.grid(), v.grid());
    auto div = divergence(tensor_product(u, v));
    // The product may carry a mean; its divergence never does.
    for (int j = 0; j < div.dim(); ++j) div[j][0] = Complex{};
    return leray_project(div);
}

double divergence_defect(const VectorField& v) {
    const auto& g = v.grid();
    double num = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        Complex acc{};
        for (int j = 0; j < v.dim(); ++j) acc += g.derivative_wavenumber(i, j) * v[j][i];
        num = std::max(num, std::abs(acc));
    }
    const double den = v.max_abs();
    return den == 0.0 ? 0.0 : num / den;
}

double inner_product(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f.grid(), g.grid());
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += (f[i] * std::conj(g[i])).real();
    return acc * f.grid().volume();
}

double inner_product(const VectorField& u, const VectorField& v) {
    double acc = 0.0;
    for (int j = 0; j < u.dim(); ++j) acc += inner_product(u[j], v[j]);
    return acc;
}

} // namespace mildns::spectral
