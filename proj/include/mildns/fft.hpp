#pragma once

#include "mildns/field.hpp"

namespace mildns::spectral {

/// Forward transform of physical samples to Fourier coefficients.
SpectralField to_spectral(const PhysicalField& samples);

/// Inverse transform. The imaginary part of the synthesized samples is
/// discarded; use `to_physical_complex` to inspect it.
PhysicalField to_physical(const SpectralField& field);

/// Inverse transform keeping the complex samples.
std::vector<Complex> to_physical_complex(const SpectralField& field);

/// Transform between raw complex arrays, for callers that manage their own
/// buffers. Sizes must equal grid.size().
void forward(const GridSpec& grid, std::span<const Complex> samples, std::span<Complex> coeffs);
void inverse(const GridSpec& grid, std::span<const Complex> coeffs, std::span<Complex> samples);

} // namespace mildns::spectral
