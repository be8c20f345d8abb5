#pragma once

#include "mildns/field.hpp"

namespace mildns::spectral {

/// |k|^s multiplier; the k = 0 coefficient of the result is always 0.
/// Throws ZeroModeError when s < 0 and the input has a nonzero mean.
SpectralField fractional_laplacian(const SpectralField& f, double s);

/// Riesz transform R_j with symbol i k_j / |k| (axis is 0-based).
/// Throws ZeroModeError on a nonzero mean.
SpectralField riesz_transform(const SpectralField& f, int axis);

/// Helmholtz-Leray projection (P v)_j = v_j + sum_l R_j R_l v_l.
VectorField leray_project(const VectorField& v);

/// Heat semigroup e^{t Laplacian}: multiplies by exp(-t |k|^2). Throws
/// DomainError for t < 0.
SpectralField heat_semigroup(const SpectralField& f, double t);
VectorField heat_semigroup(const VectorField& v, double t);

SpectralField partial_derivative(const SpectralField& f, int axis);
SpectralField laplacian(const SpectralField& f);
VectorField laplacian(const VectorField& v);
VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& v);
/// (div F)_i = sum_j d_j F_ij.
VectorField divergence(const TensorField& F);

/// Zero every mode outside the 2/3-rule band.
SpectralField dealias(const SpectralField& f);

/// Pointwise product computed in physical space with 2/3-rule truncation of
/// both factors and of the result.
SpectralField product(const SpectralField& f, const SpectralField& g);

/// (u (x) v)_ij = u_i v_j with dealiased products.
TensorField tensor_product(const VectorField& u, const VectorField& v);

/// P div(u (x) v), the integrand of the Duhamel term.
VectorField nonlinear_term(const VectorField& u, const VectorField& v);

/// max_k |k . v(k)| / max_k |v(k)| using derivative wavenumbers; 0 for v = 0.
double divergence_defect(const VectorField& v);

/// Real L^2 inner product <f, g> = L^d sum_k f(k) conj(g(k)).
double inner_product(const SpectralField& f, const SpectralField& g);
double inner_product(const VectorField& u, const VectorField& v);

/// True when |f(0)| is at round-off level relative to the field.
bool is_mean_zero(const SpectralField& f);
bool is_mean_zero(const VectorField& v);

} // namespace mildns::spectral
