#pragma once

#include "mildns/errors.hpp"
#include "mildns/spaces.hpp"

#include <iosfwd>
#include <vector>

namespace mildns::solver {

using spaces::NormSpec;
using spaces::Trajectory;
using spectral::GridSpec;
using spectral::SpectralField;
using spectral::VectorField;

enum class MeshKind { uniform, graded };

struct SolverConfig {
    double T = 1.0;
    int n_steps = 128;
    MeshKind mesh = MeshKind::uniform;
    /// Graded mesh nodes t_i = T (i/n)^grading.
    double grading = 2.0;
    double picard_tol = 1e-10;
    int picard_max_iter = 60;
    /// Kato norms monitored by the Picard loop; the first one drives the
    /// stopping rule. Empty means K^0_{2d}.
    std::vector<NormSpec> monitor_specs;
    /// Test hook: false drops the quadratic term entirely.
    bool nonlinear = true;
    /// Solve each trapezoid stage to round-off (true) or stop after the
    /// single Heun correction (false).
    bool converge_stages = true;
    int max_derivative_order = 4;

    void validate() const;
    std::vector<double> time_mesh() const;
    NormSpec monitor_spec(int dim) const;
};

/// Diagnostics of the Picard iteration x = y - B(x, x).
struct ContractionEstimate {
    /// Empirical bound on ||B(u, v)|| / (||u|| ||v||) over sampled pairs.
    double eta_hat = 0.0;
    /// Kato norm of the heat trajectory e^{t Lap} u0.
    double y_norm = 0.0;
    /// ||u^{n+1} - u^n|| for every iteration.
    std::vector<double> increments;
    /// increments[n+1] / increments[n].
    std::vector<double> ratios;
    /// ||u - (y - B(u, u))|| for the returned iterate.
    double final_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    bool contractive = true;

    /// Sufficient condition 4 eta ||y|| < 1 with the empirical eta.
    bool predicted_contractive() const noexcept { return 4.0 * eta_hat * y_norm < 1.0; }
};

/// The Picard iteration stopped growing apart instead of contracting.
class SmallnessViolated : public Error {
public:
    SmallnessViolated(const std::string& message, ContractionEstimate diagnostics)
        : Error(message), diagnostics_(std::move(diagnostics)) {}

    const ContractionEstimate& diagnostics() const noexcept { return diagnostics_; }

private:
    ContractionEstimate diagnostics_;
};

/// Iteration budget exhausted while still contracting.
class NotConvergedError : public Error {
public:
    NotConvergedError(const std::string& message, ContractionEstimate diagnostics)
        : Error(message), diagnostics_(std::move(diagnostics)) {}

    const ContractionEstimate& diagnostics() const noexcept { return diagnostics_; }

private:
    ContractionEstimate diagnostics_;
};

/// e^{t Lap} u0 sampled on `times`.
Trajectory heat_trajectory(const VectorField& u0, const std::vector<double>& times);

/// B(u, v)(t_m) for every node of the shared mesh, by composite trapezoidal
/// quadrature of the Duhamel integral with the exact heat multiplier.
std::vector<VectorField> bilinear_B_all(const Trajectory& u, const Trajectory& v);

/// B(u, v)(t) at one mesh node t.
VectorField bilinear_B(const Trajectory& u, const Trajectory& v, double t);

/// Same mesh as `u`, samples B(u, v)(t_m).
Trajectory bilinear_B_trajectory(const Trajectory& u, const Trajectory& v);

struct PicardResult {
    Trajectory trajectory;
    ContractionEstimate estimate;
};

/// Picard iteration u^{n+1} = e^{t Lap} u0 - B(u^n, u^n) on the config mesh.
/// Throws SmallnessViolated when the increments fail to shrink for
/// picard_max_iter/2 consecutive iterations or become non-finite. Log lines
/// "picard iter=<n> increment=<x> ratio=<r>" go to `log` when given.
PicardResult picard_solve(const VectorField& u0, const SolverConfig& cfg,
                          std::ostream* log = nullptr);

/// Mild-solution residual ||u - (e^{t Lap} u0 - B(u, u))|| in the Kato norm.
double mild_residual(const Trajectory& u, const VectorField& u0, const NormSpec& spec);

/// Integrating-factor trapezoidal stepper on the config mesh.
Trajectory integrate(const VectorField& u0, const SolverConfig& cfg);

/// D_t^n u at mesh time t from the equation u_t = Lap u - P div(u (x) u).
VectorField time_derivative(const Trajectory& traj, double t, int order,
                            int max_order = 4);

/// D_t^0 u, ..., D_t^order u for one snapshot.
std::vector<VectorField> time_derivatives(const VectorField& u, int order);

/// Pressure with d_t u = Lap u - div(u (x) u) - grad p, zero mean.
SpectralField pressure(const VectorField& u);

/// Runs the Picard loop and collects contraction diagnostics without
/// throwing; non-contraction is reported through `contractive`.
ContractionEstimate estimate_contraction(const VectorField& u0, const SolverConfig& cfg);

struct EnergyBalance {
    double initial = 0.0;
    double final = 0.0;
    double dissipated = 0.0;
    /// |final + dissipated - initial| / initial.
    double relative_defect = 0.0;
};

/// ||u(T)||^2 + 2 int_0^T ||grad u||^2 dt against ||u0||^2, with the time
/// integral by composite Simpson over pairs of steps.
EnergyBalance energy_balance(const Trajectory& traj);

} // namespace mildns::solver
