#include "mildns/operators.hpp"
#include "mildns/solver.hpp"

#include <cmath>

namespace mildns::solver {

using spectral::heat_semigroup;
using spectral::nonlinear_term;

Trajectory heat_trajectory(const VectorField& u0, const std::vector<double>& times) {
    Trajectory traj(u0.grid());
    for (double t : times) traj.push_back(t, heat_semigroup(u0, t));
    return traj;
}

std::vector<VectorField> bilinear_B_all(const Trajectory& u, const Trajectory& v) {
    spectral::require_same_grid(u.grid(), v.grid());
    if (u.size() != v.size() || u.empty()) {
        throw DimensionError("bilinear term needs two trajectories on the same mesh");
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u.time(i) != v.time(i)) {
            throw DimensionError("bilinear term needs two trajectories on the same mesh");
        }
    }
    if (u.time(0) != 0.0) throw DomainError("Duhamel mesh must start at t = 0");

    // B(t_{m+1}) = e^{h Lap}[B(t_m) + h/2 N(t_m)] + h/2 N(t_{m+1}), which is
    // the composite trapezoidal rule on [0, t_{m+1}] written recursively.
    std::vector<VectorField> out;
    out.reserve(u.size());
    out.emplace_back(u.grid());
    VectorField n_prev = nonlinear_term(u[0], v[0]);
    for (std::size_t m = 0; m + 1 < u.size(); ++m) {
        const double h = u.time(m + 1) - u.time(m);
        VectorField n_next = nonlinear_term(u[m + 1], v[m + 1]);
        VectorField acc = out.back() + (0.5 * h) * n_prev;
        acc = heat_semigroup(acc, h);
        acc += (0.5 * h) * n_next;
        out.push_back(std::move(acc));
        n_prev = std::move(n_next);
    }
    return out;
}

VectorField bilinear_B(const Trajectory& u, const Trajectory& v, double t) {
    if (u.empty() || t > u.horizon() * (1.0 + 1e-12) || t > v.horizon() * (1.0 + 1e-12)) {
        throw DomainError("time beyond trajectory horizon");
    }
    const auto idx = u.index_of(t);
    if (!idx) throw DomainError("bilinear term is evaluated at mesh nodes only");
    auto all = bilinear_B_all(u, v);
    return std::move(all[*idx]);
}

Trajectory bilinear_B_trajectory(const Trajectory& u, const Trajectory& v) {
    auto all = bilinear_B_all(u, v);
    Trajectory out(u.grid(), u.config_hash());
    for (std::size_t i = 0; i < all.size(); ++i) out.push_back(u.time(i), std::move(all[i]));
    return out;
}

double mild_residual(const Trajectory& u, const VectorField& u0, const NormSpec& spec) {
    const Trajectory y = heat_trajectory(u0, u.times());
    const Trajectory b = bilinear_B_trajectory(u, u);
    Trajectory rhs(u.grid());
    for (std::size_t i = 0; i < u.size(); ++i) rhs.push_back(u.time(i), y[i] - b[i]);
    return spaces::kato_distance(u, rhs, spec);
}

} // namespace mildns::solver
