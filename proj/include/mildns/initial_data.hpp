#pragma once

#include "mildns/field.hpp"

#include <cstdint>
#include <string>

namespace mildns::spectral {

enum class InitialKind { taylor_green, random_slope, gaussian_vortex };

InitialKind parse_initial_kind(const std::string& name);
std::string to_string(InitialKind kind);

struct InitialDataParams {
    InitialKind kind = InitialKind::taylor_green;
    double amplitude = 1.0;
    /// random_slope: spectral slope, |u(k)| ~ |k|^-beta.
    double beta = 1.0;
    std::uint64_t seed = 0;
    /// gaussian_vortex: heat-kernel time of the stream function profile.
    double width = 0.05;
    /// taylor_green: integer wavenumber multiple of the fundamental.
    int mode = 1;
};

/// Divergence-free, mean-zero, real initial velocity.
///
/// - taylor_green: amplitude * (sin kx cos ky, -cos kx sin ky[, 0]) with
///   k = mode * 2 pi / L (in 3D the first two components carry an extra
///   cos kz factor).
/// - random_slope: random phases, modulus |k|^-beta inside the 2/3 band,
///   Leray-projected and scaled to RMS = amplitude.
/// - gaussian_vortex: curl of a Gaussian stream function centred in the box,
///   peak stream-function value = amplitude.
VectorField make_initial_data(const InitialDataParams& params, const GridSpec& grid);

/// Scalar mean-zero random field with |f(k)| ~ |k|^-beta inside the 2/3 band,
/// RMS 1. Deterministic in (grid, beta, seed).
SpectralField random_slope_scalar(const GridSpec& grid, double beta, std::uint64_t seed);

/// Periodisation of the heat kernel G_a(x) = (4 pi a)^{-d/2} exp(-|x - c|^2 / 4a)
/// centred at c = (L/2, ..., L/2). Its coefficients are exactly
/// L^{-d} exp(-a |k|^2) exp(-i k.c).
SpectralField periodic_gaussian(const GridSpec& grid, double a);

/// Real mode cos(k.x) for integer mode indices m (k = 2 pi m / L).
SpectralField cosine_mode(const GridSpec& grid, const std::array<int, 3>& m);
SpectralField sine_mode(const GridSpec& grid, const std::array<int, 3>& m);

} // namespace mildns::spectral
