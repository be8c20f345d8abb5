#include "mildns/spaces.hpp"

#include "mildns/errors.hpp"
#include "mildns/fft.hpp"
#include "mildns/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mildns::spaces {

NormSpec::NormSpec(double s, double q) : s_(s), q_(q) {
    if (!std::isfinite(s)) throw DomainError("regularity s must be finite");
    if (!(q > 1.0) || !std::isfinite(q)) {
        throw DomainError("integrability q must lie in the open interval (1, inf), got " +
                          std::to_string(q));
    }
}

BesovSpec::BesovSpec(double s, double q, double t_min, double t_max, double ratio)
    : s_(s), q_(q), t_min_(t_min), t_max_(t_max), ratio_(ratio) {
    if (!(s < 0.0)) throw HypothesisError("heat characterisation of Besov norms needs s < 0");
    if (!(q > 1.0) || !std::isfinite(q)) throw DomainError("Besov q must lie in (1, inf)");
    if (!(t_min > 0.0) || !(t_max >= t_min)) throw DomainError("Besov time grid needs 0 < t_min <= t_max");
    if (!(ratio > 1.0)) throw DomainError("Besov time grid ratio must exceed 1");
}

BesovSpec BesovSpec::for_grid(const GridSpec& grid, double s, double q) {
    // t_min = 1/(2 k_max)^2 so the sup is attained inside the grid for
    // every mode of the dealiased band when s <= -2/9
    const double r = grid.length() / (2.0 * std::numbers::pi);
    const double h = grid.spacing() / (2.0 * std::numbers::pi);
    return BesovSpec(s, q, h * h, r * r, std::pow(2.0, 0.25));
}

std::vector<double> BesovSpec::times() const {
    std::vector<double> out;
    for (double t = t_min_; t <= t_max_ * (1.0 + 1e-12); t *= ratio_) out.push_back(t);
    return out;
}

double lq_norm(const SpectralField& f, double q) {
    if (!(q >= 1.0)) throw DomainError("lq_norm needs q >= 1");
    const auto samples = spectral::to_physical(f);
    if (std::isinf(q)) {
        double m = 0.0;
        for (double v : samples.values) m = std::max(m, std::abs(v));
        return m;
    }
    // Scale by the max first so large q cannot overflow.
    double peak = 0.0;
    for (double v : samples.values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    double acc = 0.0;
    if (q == 2.0) {
        for (double v : samples.values) acc += (v / peak) * (v / peak);
    } else {
        for (double v : samples.values) acc += std::pow(std::abs(v) / peak, q);
    }
    return peak * std::pow(acc * f.grid().cell_volume(), 1.0 / q);
}

double lq_norm(const VectorField& u, double q) {
    double acc = 0.0;
    for (int j = 0; j < u.dim(); ++j) {
        const double n = lq_norm(u[j], q);
        acc += n * n;
    }
    return std::sqrt(acc);
}

double sobolev_norm(const SpectralField& f, const NormSpec& spec) {
    return lq_norm(spectral::fractional_laplacian(f, spec.s()), spec.q());
}

double sobolev_norm(const VectorField& u, const NormSpec& spec) {
    double acc = 0.0;
    for (int j = 0; j < u.dim(); ++j) {
        const double n = sobolev_norm(u[j], spec);
        acc += n * n;
    }
    return std::sqrt(acc);
}

double besov_norm(const SpectralField& f, const BesovSpec& spec) {
    if (!spectral::is_mean_zero(f)) throw ZeroModeError("Besov norm needs a mean-zero field");
    double best = 0.0;
    for (double t : spec.times()) {
        const double v =
            std::pow(t, -0.5 * spec.s()) * lq_norm(spectral::heat_semigroup(f, t), spec.q());
        best = std::max(best, v);
    }
    return best;
}

double besov_norm(const VectorField& u, const BesovSpec& spec) {
    if (!spectral::is_mean_zero(u)) throw ZeroModeError("Besov norm needs a mean-zero field");
    double best = 0.0;
    for (double t : spec.times()) {
        const double v =
            std::pow(t, -0.5 * spec.s()) * lq_norm(spectral::heat_semigroup(u, t), spec.q());
        best = std::max(best, v);
    }
    return best;
}

namespace {

bool weight_defined(double t, double alpha) { return t > 0.0 || alpha == 0.0; }

double weight(double t, double exponent) { return exponent == 0.0 ? 1.0 : std::pow(t, exponent); }

} // namespace

double kato_norm(const Trajectory& traj, const NormSpec& spec, ComponentSelector which,
                 double horizon) {
    if (traj.empty()) throw DomainError("Kato norm of an empty trajectory");
    const double alpha = spec.alpha(traj.grid().dim());
    double best = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.time(i);
        if (t > horizon) break;
        if (!weight_defined(t, alpha)) continue;
        const double n = which.component ? sobolev_norm(traj[i][*which.component], spec)
                                         : sobolev_norm(traj[i], spec);
        best = std::max(best, weight(t, 0.5 * alpha) * n);
    }
    return best;
}

double kato_distance(const Trajectory& a, const Trajectory& b, const NormSpec& spec) {
    if (a.size() != b.size()) throw DimensionError("trajectories have different meshes");
    const double alpha = spec.alpha(a.grid().dim());
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.time(i) != b.time(i)) throw DimensionError("trajectories have different meshes");
        const double t = a.time(i);
        if (!weight_defined(t, alpha)) continue;
        best = std::max(best, weight(t, 0.5 * alpha) * sobolev_norm(a[i] - b[i], spec));
    }
    return best;
}

double velocity_rescale_exponent(const NormSpec& spec, int order, int dim) {
    return 0.5 * (spec.s() + 1.0 + 2.0 * order - dim / spec.q());
}

std::vector<NormSample> rescaled_norm_series(const Trajectory& traj, const NormSpec& spec,
                                             int order, const DerivativeProvider& derivative) {
    if (order < 0) throw DomainError("derivative order must be >= 0");
    if (order > 0 && !derivative) {
        throw DomainError("time-derivative series need a derivative provider");
    }
    const double theta = velocity_rescale_exponent(spec, order, traj.grid().dim());
    std::vector<NormSample> out;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.time(i);
        if (!weight_defined(t, theta)) continue;
        const double raw = order == 0 ? sobolev_norm(traj[i], spec)
                                      : sobolev_norm(derivative(traj, i, order), spec);
        out.push_back({t, raw, weight(t, theta) * raw});
    }
    return out;
}

} // namespace mildns::spaces
