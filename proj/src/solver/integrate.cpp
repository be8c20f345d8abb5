#include "mildns/operators.hpp"
#include "mildns/solver.hpp"

#include <cmath>

namespace mildns::solver {

using spectral::heat_semigroup;
using spectral::nonlinear_term;

namespace {

bool finite(const VectorField& u) { return std::isfinite(u.max_abs()); }

double max_difference(const VectorField& a, const VectorField& b) {
    return (a - b).max_abs();
}

constexpr int kMaxStageSweeps = 50;

} // namespace

Trajectory integrate(const VectorField& u0, const SolverConfig& cfg) {
    cfg.validate();
    if (!spectral::is_mean_zero(u0)) throw ZeroModeError("initial velocity must be mean-zero");
    const auto mesh = cfg.time_mesh();
    Trajectory traj(u0.grid());
    traj.push_back(mesh[0], u0);
    if (!finite(u0)) throw BlowUpError(mesh[0], "initial data is not finite");

    VectorField u = u0;
    for (std::size_t m = 0; m + 1 < mesh.size(); ++m) {
        const double h = mesh[m + 1] - mesh[m];
        VectorField next(u.grid());
        if (!cfg.nonlinear) {
            next = heat_semigroup(u, h);
        } else {
            // u_{m+1} = e^{h Lap}[u_m - h/2 N(u_m)] - h/2 N(u_{m+1}), the
            // trapezoidal Duhamel step; the stage value starts from an
            // explicit Euler predictor.
            const VectorField n_now = nonlinear_term(u, u);
            const VectorField base = heat_semigroup(u - (0.5 * h) * n_now, h);
            next = heat_semigroup(u - h * n_now, h);
            const int sweeps = cfg.converge_stages ? kMaxStageSweeps : 1;
            for (int k = 0; k < sweeps; ++k) {
                VectorField corrected = base - (0.5 * h) * nonlinear_term(next, next);
                const double change = max_difference(corrected, next);
                next = std::move(corrected);
                if (!finite(next)) break;
                if (change <= 1e-15 * next.max_abs()) break;
            }
        }
        if (!finite(next)) {
            throw BlowUpError(mesh[m], "non-finite velocity after t = " + std::to_string(mesh[m]));
        }
        u = std::move(next);
        traj.push_back(mesh[m + 1], u);
    }
    return traj;
}

} // namespace mildns::solver
