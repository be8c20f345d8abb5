#include "mildns/operators.hpp"
#include "mildns/solver.hpp"

#include <cmath>
#include <ostream>

namespace mildns::solver {

void SolverConfig::validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("solver horizon T must be positive");
    if (n_steps < 2) throw DomainError("solver needs n_steps >= 2");
    if (!(picard_tol > 0.0)) throw DomainError("picard_tol must be positive");
    if (picard_max_iter < 2) throw DomainError("picard_max_iter must be >= 2");
    if (mesh == MeshKind::graded && !(grading >= 1.0)) {
        throw DomainError("graded mesh exponent must be >= 1");
    }
    if (max_derivative_order < 1) throw DomainError("max_derivative_order must be >= 1");
}

std::vector<double> SolverConfig::time_mesh() const {
    validate();
    std::vector<double> t(static_cast<std::size_t>(n_steps) + 1);
    for (int i = 0; i <= n_steps; ++i) {
        const double x = static_cast<double>(i) / n_steps;
        t[i] = mesh == MeshKind::uniform ? T * x : T * std::pow(x, grading);
    }
    t.back() = T;
    return t;
}

NormSpec SolverConfig::monitor_spec(int dim) const {
    return monitor_specs.empty() ? NormSpec(0.0, 2.0 * dim) : monitor_specs.front();
}

namespace {

Trajectory picard_step(const Trajectory& y, const Trajectory& u) {
    auto b = bilinear_B_all(u, u);
    Trajectory out(y.grid());
    for (std::size_t i = 0; i < y.size(); ++i) out.push_back(y.time(i), y[i] - b[i]);
    return out;
}

void require_initial_data(const VectorField& u0) {
    if (!spectral::is_mean_zero(u0)) throw ZeroModeError("initial velocity must be mean-zero");
    if (spectral::divergence_defect(u0) > 1e-10) {
        throw DomainError("initial velocity must be divergence-free");
    }
}

// Sampled ratios ||B(u, v)|| / (||u|| ||v||) over pairs of iterates.
double sample_eta(const std::vector<const Trajectory*>& samples, const NormSpec& spec) {
    double eta = 0.0;
    std::vector<double> norms;
    for (const auto* s : samples) norms.push_back(spaces::kato_norm(*s, spec));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = 0; j < samples.size(); ++j) {
            if (norms[i] == 0.0 || norms[j] == 0.0) continue;
            const auto b = bilinear_B_trajectory(*samples[i], *samples[j]);
            eta = std::max(eta, spaces::kato_norm(b, spec) / (norms[i] * norms[j]));
        }
    }
    return eta;
}

struct PicardRun {
    Trajectory y;
    Trajectory u;
    Trajectory first;
    ContractionEstimate est;
};

PicardRun run_picard(const VectorField& u0, const SolverConfig& cfg, std::ostream* log) {
    cfg.validate();
    require_initial_data(u0);
    const auto spec = cfg.monitor_spec(u0.grid().dim());
    const auto mesh = cfg.time_mesh();

    PicardRun run{heat_trajectory(u0, mesh), Trajectory(u0.grid()), Trajectory(u0.grid()), {}};
    auto& est = run.est;
    est.y_norm = spaces::kato_norm(run.y, spec);
    run.u = run.y;

    if (!cfg.nonlinear) {
        est.iterations = 1;
        est.converged = true;
        run.first = run.u;
        return run;
    }

    int growing = 0;
    for (int it = 1; it <= cfg.picard_max_iter; ++it) {
        Trajectory next = picard_step(run.y, run.u);
        const double inc = spaces::kato_distance(next, run.u, spec);
        est.iterations = it;
        if (!est.increments.empty()) {
            const double prev = est.increments.back();
            const double ratio = prev > 0.0 ? inc / prev : 0.0;
            est.ratios.push_back(ratio);
            growing = ratio >= 1.0 ? growing + 1 : 0;
        }
        est.increments.push_back(inc);
        if (log) {
            *log << "picard iter=" << it << " increment=" << inc << " ratio="
                 << (est.ratios.empty() ? 0.0 : est.ratios.back()) << '\n';
        }
        if (!std::isfinite(inc)) {
            est.contractive = false;
            throw SmallnessViolated("Picard iterates became non-finite", est);
        }
        if (it == 1) run.first = next;
        run.u = std::move(next);
        if (growing >= cfg.picard_max_iter / 2) {
            est.contractive = false;
            throw SmallnessViolated("Picard increments stopped contracting", est);
        }
        if (inc < cfg.picard_tol) {
            est.converged = true;
            break;
        }
    }
    for (double r : est.ratios) {
        if (!(r < 1.0)) est.contractive = false;
    }
    if (!est.converged) {
        throw NotConvergedError("Picard iteration did not reach the tolerance", est);
    }
    est.final_residual =
        spaces::kato_distance(run.u, picard_step(run.y, run.u), spec);
    return run;
}

} // namespace

PicardResult picard_solve(const VectorField& u0, const SolverConfig& cfg, std::ostream* log) {
    auto run = run_picard(u0, cfg, log);
    Trajectory traj = std::move(run.u);
    return {std::move(traj), std::move(run.est)};
}

ContractionEstimate estimate_contraction(const VectorField& u0, const SolverConfig& cfg) {
    const auto spec = cfg.monitor_spec(u0.grid().dim());
    try {
        auto run = run_picard(u0, cfg, nullptr);
        run.est.eta_hat = sample_eta({&run.y, &run.first, &run.u}, spec);
        return run.est;
    } catch (const SmallnessViolated& e) {
        auto est = e.diagnostics();
        const auto y = heat_trajectory(u0, cfg.time_mesh());
        est.eta_hat = sample_eta({&y}, spec);
        return est;
    } catch (const NotConvergedError& e) {
        auto est = e.diagnostics();
        const auto y = heat_trajectory(u0, cfg.time_mesh());
        est.eta_hat = sample_eta({&y}, spec);
        return est;
    }
}

} // namespace mildns::solver
