#include "mildns/operators.hpp"
#include "mildns/solver.hpp"

#include <cmath>

namespace mildns::solver {

using spectral::Complex;

std::vector<VectorField> time_derivatives(const VectorField& u, int order) {
    if (order < 0) throw DomainError("derivative order must be >= 0");
    std::vector<VectorField> d;
    d.push_back(u);
    // D^m u = Lap D^{m-1} u - P div sum_j C(m-1, j) D^j u (x) D^{m-1-j} u
    for (int m = 1; m <= order; ++m) {
        VectorField next = spectral::laplacian(d[m - 1]);
        double binom = 1.0;
        for (int j = 0; j <= m - 1; ++j) {
            next -= binom * spectral::nonlinear_term(d[j], d[m - 1 - j]);
            binom = binom * (m - 1 - j) / (j + 1);
        }
        d.push_back(std::move(next));
    }
    return d;
}

VectorField time_derivative(const Trajectory& traj, double t, int order, int max_order) {
    if (order < 1) throw DomainError("time derivative order must be >= 1");
    if (order > max_order) {
        throw DomainError("time derivative order " + std::to_string(order) +
                          " exceeds the configured maximum " + std::to_string(max_order));
    }
    const auto idx = traj.index_of(t);
    if (!idx) throw DomainError("time derivatives are available at mesh times only");
    auto all = time_derivatives(traj[*idx], order);
    return std::move(all.back());
}

SpectralField pressure(const VectorField& u) {
    const auto& g = u.grid();
    const int d = u.dim();
    const auto F = spectral::tensor_product(u, u);
    SpectralField p(g);
    for (std::size_t i = 1; i < g.size(); ++i) {
        const double k2 = g.derivative_k_squared(i);
        if (k2 == 0.0) continue;
        Complex acc{};
        for (int j = 0; j < d; ++j) {
            for (int l = 0; l < d; ++l) {
                acc += g.derivative_wavenumber(i, j) * g.derivative_wavenumber(i, l) * F(j, l)[i];
            }
        }
        p[i] = -acc / k2;
    }
    return p;
}

namespace {

double gradient_energy(const VectorField& u) {
    const auto& g = u.grid();
    double acc = 0.0;
    for (int j = 0; j < u.dim(); ++j) {
        for (std::size_t i = 0; i < g.size(); ++i) acc += g.k_squared(i) * std::norm(u[j][i]);
    }
    return acc * g.volume();
}

} // namespace

EnergyBalance energy_balance(const Trajectory& traj) {
    if (traj.size() < 2) throw DomainError("energy balance needs at least two samples");
    std::vector<double> diss(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) diss[i] = gradient_energy(traj[i]);

    // Simpson on each pair of intervals (unequal spacing allowed); a final
    // odd interval falls back to the trapezoid rule.
    double integral = 0.0;
    std::size_t i = 0;
    for (; i + 2 < traj.size(); i += 2) {
        const double h0 = traj.time(i + 1) - traj.time(i);
        const double h1 = traj.time(i + 2) - traj.time(i + 1);
        const double H = h0 + h1;
        integral += H / 6.0 *
                    ((2.0 - h1 / h0) * diss[i] + H * H / (h0 * h1) * diss[i + 1] +
                     (2.0 - h0 / h1) * diss[i + 2]);
    }
    if (i + 1 < traj.size()) {
        integral += 0.5 * (traj.time(i + 1) - traj.time(i)) * (diss[i] + diss[i + 1]);
    }

    EnergyBalance e;
    e.initial = spectral::inner_product(traj[0], traj[0]);
    e.final = spectral::inner_product(traj[traj.size() - 1], traj[traj.size() - 1]);
    e.dissipated = 2.0 * integral;
    e.relative_defect =
        e.initial > 0.0 ? std::abs(e.final + e.dissipated - e.initial) / e.initial : 0.0;
    return e;
}

} // namespace mildns::solver
