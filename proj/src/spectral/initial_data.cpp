#include "mildns/initial_data.hpp"

#include "mildns/errors.hpp"
#include "mildns/fft.hpp"
#include "mildns/operators.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace mildns::spectral {

namespace {

// Uniform double in [0, 1) from the top 53 bits; bit-stable across
// standard library implementations, unlike std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Phases of white noise are Hermitian by construction, so imposing the
// modulus on them yields a real field.
SpectralField random_slope_component(const GridSpec& grid, double beta, std::mt19937_64& rng) {
    PhysicalField noise(grid);
    for (auto& v : noise.values) v = unit_uniform(rng) - 0.5;
    SpectralField f = to_spectral(noise);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double mod = std::abs(f[i]);
        if (i == 0 || !grid.dealias_keep(i) || grid.is_nyquist(i) || mod == 0.0) {
            f[i] = Complex{};
            continue;
        }
        f[i] *= std::pow(grid.k_norm(i), -beta) / mod;
    }
    return f;
}

double rms(const VectorField& v) {
    return std::sqrt(inner_product(v, v) / v.grid().volume());
}

} // namespace

InitialKind parse_initial_kind(const std::string& name) {
    if (name == "taylor_green") return InitialKind::taylor_green;
    if (name == "random_slope") return InitialKind::random_slope;
    if (name == "gaussian_vortex") return InitialKind::gaussian_vortex;
    throw DomainError("unknown initial data kind '" + name + "'");
}

std::string to_string(InitialKind kind) {
    switch (kind) {
    case InitialKind::taylor_green: return "taylor_green";
    case InitialKind::random_slope: return "random_slope";
    case InitialKind::gaussian_vortex: return "gaussian_vortex";
    }
    return "unknown";
}

SpectralField cosine_mode(const GridSpec& grid, const std::array<int, 3>& m) {
    SpectralField f(grid);
    const auto plus = grid.flat_index(m);
    const auto minus = grid.conjugate_index(plus);
    f[plus] += 0.5;
    f[minus] += 0.5;
    return f;
}

SpectralField sine_mode(const GridSpec& grid, const std::array<int, 3>& m) {
    SpectralField f(grid);
    const auto plus = grid.flat_index(m);
    const auto minus = grid.conjugate_index(plus);
    f[plus] += Complex(0.0, -0.5);
    f[minus] += Complex(0.0, 0.5);
    return f;
}

SpectralField periodic_gaussian(const GridSpec& grid, double a) {
    if (!(a > 0.0)) throw DomainError("Gaussian width must be positive");
    SpectralField f(grid);
    const double norm = 1.0 / grid.volume();
    const double c = 0.5 * grid.length();
    for (std::size_t i = 0; i < f.size(); ++i) {
        double phase = 0.0;
        for (int ax = 0; ax < grid.dim(); ++ax) phase -= grid.wavenumber(i, ax) * c;
        f[i] = norm * std::exp(-a * grid.k_squared(i)) * std::polar(1.0, phase);
    }
    return f;
}

SpectralField random_slope_scalar(const GridSpec& grid, double beta, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SpectralField f = random_slope_component(grid, beta, rng);
    double energy = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) energy += std::norm(f[i]);
    if (energy > 0.0) f *= 1.0 / std::sqrt(energy);
    return f;
}

VectorField make_initial_data(const InitialDataParams& params, const GridSpec& grid) {
    const int d = grid.dim();
    VectorField u(grid);
    switch (params.kind) {
    case InitialKind::taylor_green: {
        // sin(a)cos(b) = [sin(a+b) + sin(a-b)] / 2, assembled from exact modes.
        const double A = params.amplitude;
        const int m = params.mode;
        if (m < 1 || 3 * m >= grid.modes()) {
            throw DomainError("Taylor-Green mode must lie inside the dealiased band");
        }
        if (d == 2) {
            u[0] = 0.5 * A * (sine_mode(grid, {m, m, 0}) + sine_mode(grid, {m, -m, 0}));
            u[1] = -0.5 * A * (sine_mode(grid, {m, m, 0}) - sine_mode(grid, {m, -m, 0}));
        } else {
            // sin x cos y cos z and -cos x sin y cos z
            auto s = [&](int a, int b, int c) { return sine_mode(grid, {m * a, m * b, m * c}); };
            u[0] = 0.25 * A * (s(1, 1, 1) + s(1, 1, -1) + s(1, -1, 1) + s(1, -1, -1));
            u[1] = -0.25 * A * (s(1, 1, 1) + s(1, 1, -1) - s(1, -1, 1) - s(1, -1, -1));
        }
        return u;
    }
    case InitialKind::random_slope: {
        if (params.amplitude == 0.0) return u;
        std::mt19937_64 rng(params.seed);
        for (int j = 0; j < d; ++j) u[j] = random_slope_component(grid, params.beta, rng);
        u = leray_project(u);
        const double r = rms(u);
        if (r > 0.0) u *= params.amplitude / r;
        return u;
    }
    case InitialKind::gaussian_vortex: {
        SpectralField psi = periodic_gaussian(grid, params.width);
        psi *= params.amplitude * std::pow(4.0 * std::numbers::pi * params.width, 0.5 * d);
        psi[0] = Complex{};
        u[0] = partial_derivative(psi, 1);
        u[1] = -1.0 * partial_derivative(psi, 0);
        return leray_project(u);
    }
    }
    throw DomainError("unknown initial data kind");
}

} // namespace mildns::spectral
