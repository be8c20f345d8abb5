#include "mildns/decay.hpp"

#include "mildns/errors.hpp"
#include "mildns/format.hpp"
#include "mildns/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>

namespace mildns::decay {

std::string to_string(QuantityKind kind) {
    return kind == QuantityKind::velocity ? "velocity" : "pressure";
}

QuantityKind parse_quantity_kind(const std::string& name) {
    if (name == "velocity") return QuantityKind::velocity;
    if (name == "pressure") return QuantityKind::pressure;
    throw DomainError("unknown quantity kind '" + name + "'");
}

std::string to_string(Trend trend) {
    switch (trend) {
    case Trend::increasing: return "increasing";
    case Trend::flat: return "flat";
    case Trend::decreasing: return "decreasing";
    }
    return "flat";
}

void ExponentSpec::validate(int dim) const {
    (void)norm();
    if (n < 0) throw HypothesisError("derivative order must be >= 0");
    if (!(data_p > 1.0) || !std::isfinite(data_p)) throw HypothesisError("data_p must lie in (1, inf)");
    if (q < data_p) throw HypothesisError("decay estimates need q >= p");
    const double critical = dim / data_p - 1.0;
    if (kind == QuantityKind::velocity) {
        if (s < critical - 1e-12) throw HypothesisError("velocity decay needs s >= d/p - 1");
    } else {
        if (n != 0) throw HypothesisError("pressure reports take n = 0");
        if (s < std::max(critical, 0.0) - 1e-12) {
            throw HypothesisError("pressure decay needs s >= max(d/p - 1, 0)");
        }
    }
}

double theoretical_exponent(const ExponentSpec& spec, int dim) {
    spec.validate(dim);
    if (spec.kind == QuantityKind::velocity) {
        return 0.5 * (spec.s + 1.0 + 2.0 * spec.n - dim / spec.q);
    }
    return 0.5 * (spec.s + 2.0 - dim / spec.q);
}

FitResult fit_decay_exponent(const std::vector<std::pair<double, double>>& series,
                             FitWindow window) {
    std::vector<double> x, y;
    for (const auto& [t, v] : series) {
        if (t < window.t_lo || t > window.t_hi) continue;
        if (!(t > 0.0)) throw DomainError("decay fit needs t > 0");
        if (!(v > 0.0)) throw DomainError("decay fit needs positive values");
        x.push_back(std::log(t));
        y.push_back(std::log(v));
    }
    if (x.size() < 5) throw DomainError("decay fit needs at least 5 samples in the window");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw DomainError("decay fit needs distinct sample times");
    FitResult r;
    r.exponent = sxy / sxx;
    r.samples = x.size();
    // syy is at round-off level for constant series
    const double scale = std::max(1.0, my * my) * n;
    if (syy <= 1e-24 * scale) {
        r.r_squared = 1.0;
    } else {
        const double ss_res = std::max(0.0, syy - r.exponent * sxy);
        r.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return r;
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j);
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}

} // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DimensionError("spearman needs equal-length inputs");
    if (x.size() < 2) return 0.0;
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

FitWindow validity_window(const spaces::GridSpec& grid) {
    const double h = grid.spacing();
    const double r = grid.length() / (2.0 * std::numbers::pi);
    return {10.0 * h * h, 0.25 * r * r};
}

std::vector<spaces::NormSample> quantity_series(const Trajectory& traj, const ExponentSpec& spec,
                                                int max_derivative_order) {
    const int dim = traj.grid().dim();
    spec.validate(dim);
    if (spec.kind == QuantityKind::velocity) {
        spaces::DerivativeProvider provider = [max_derivative_order](const Trajectory& tr,
                                                                     std::size_t i, int order) {
            return solver::time_derivative(tr, tr.time(i), order, max_derivative_order);
        };
        return spaces::rescaled_norm_series(traj, spec.norm(), spec.n, provider);
    }
    const double theta = theoretical_exponent(spec, dim);
    const auto norm = spec.norm();
    std::vector<spaces::NormSample> out;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.time(i);
        if (t <= 0.0) continue;
        const double raw = spaces::sobolev_norm(solver::pressure(traj[i]), norm);
        out.push_back({t, raw, std::pow(t, theta) * raw});
    }
    return out;
}

DecayReport decay_report_from_series(const std::vector<spaces::NormSample>& series,
                                     const ExponentSpec& spec, int dim, FitWindow window,
                                     const ReportOptions& options) {
    DecayReport rep;
    rep.spec = spec;
    rep.dim = dim;
    rep.theoretical_exponent = theoretical_exponent(spec, dim);
    rep.window = window;
    rep.slack = options.slack;

    std::vector<std::pair<double, double>> raw;
    bool all_zero = true;
    for (const auto& p : series) {
        if (p.t < window.t_lo || p.t > window.t_hi) continue;
        raw.emplace_back(p.t, p.raw);
        if (p.raw != 0.0) all_zero = false;
    }
    rep.samples = raw.size();
    if (raw.size() < 5) throw DomainError("decay report needs at least 5 samples in the window");
    if (all_zero) {
        rep.degenerate = true;
        rep.fitted_exponent = 0.0;
        rep.r_squared = 1.0;
        rep.rescaled_trend = Trend::flat;
        rep.pass = true;
        return rep;
    }
    const auto fit = fit_decay_exponent(raw, window);
    rep.fitted_exponent = fit.exponent;
    rep.r_squared = fit.r_squared;

    const double tail_start = window.t_lo + (2.0 / 3.0) * (window.t_hi - window.t_lo);
    std::vector<double> tt, rv;
    for (const auto& p : series) {
        if (p.t < tail_start || p.t > window.t_hi) continue;
        tt.push_back(p.t);
        rv.push_back(p.rescaled);
    }
    rep.spearman_tail = spearman(tt, rv);
    if (rep.spearman_tail > options.trend_threshold) {
        rep.rescaled_trend = Trend::increasing;
    } else if (rep.spearman_tail < -options.trend_threshold) {
        rep.rescaled_trend = Trend::decreasing;
    } else {
        rep.rescaled_trend = Trend::flat;
    }
    rep.pass = rep.fitted_exponent <= -rep.theoretical_exponent + options.slack &&
               rep.rescaled_trend != Trend::increasing;
    return rep;
}

DecayReport decay_report(const Trajectory& traj, const ExponentSpec& spec, FitWindow requested,
                         const ReportOptions& options) {
    if (!(requested.t_lo < requested.t_hi)) throw DomainError("decay window needs t_lo < t_hi");
    const auto valid = validity_window(traj.grid());
    const FitWindow window{std::max(requested.t_lo, valid.t_lo),
                           std::min(requested.t_hi, valid.t_hi)};
    if (!(window.t_lo < window.t_hi)) {
        throw DomainError("requested decay window lies outside the validity window [" +
                          format_double(valid.t_lo) + ", " + format_double(valid.t_hi) + "]");
    }
    const auto series = quantity_series(traj, spec, options.max_derivative_order);
    return decay_report_from_series(series, spec, traj.grid().dim(), window, options);
}

void write_report_record(std::ostream& out, const DecayReport& r) {
    out << "[decay_report]\n"
        << "kind = " << to_string(r.spec.kind) << '\n'
        << "dim = " << r.dim << '\n'
        << "s = " << format_double(r.spec.s) << '\n'
        << "q = " << format_double(r.spec.q) << '\n'
        << "n = " << r.spec.n << '\n'
        << "data_p = " << format_double(r.spec.data_p) << '\n'
        << "theoretical_exponent = " << format_double(r.theoretical_exponent) << '\n'
        << "fitted_exponent = " << format_double(r.fitted_exponent) << '\n'
        << "r_squared = " << format_double(r.r_squared) << '\n'
        << "t_lo = " << format_double(r.window.t_lo) << '\n'
        << "t_hi = " << format_double(r.window.t_hi) << '\n'
        << "samples = " << r.samples << '\n'
        << "spearman_tail = " << format_double(r.spearman_tail) << '\n'
        << "rescaled_trend = " << to_string(r.rescaled_trend) << '\n'
        << "slack = " << format_double(r.slack) << '\n'
        << "degenerate = " << (r.degenerate ? "true" : "false") << '\n'
        << "verdict = " << (r.pass ? "PASS" : "FAIL") << "\n\n";
}

void write_exponent_table(std::ostream& out, const std::vector<DecayReport>& reports) {
    out << "kind,s,q,n,theoretical_exponent,fitted_exponent,r_squared,t_lo,t_hi,samples,trend,"
           "verdict\n";
    for (const auto& r : reports) {
        out << to_string(r.spec.kind) << ',' << format_double(r.spec.s) << ','
            << format_double(r.spec.q) << ',' << r.spec.n << ','
            << format_double(r.theoretical_exponent) << ',' << format_double(r.fitted_exponent)
            << ',' << format_double(r.r_squared) << ',' << format_double(r.window.t_lo) << ','
            << format_double(r.window.t_hi) << ',' << r.samples << ','
            << to_string(r.rescaled_trend) << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
    }
}

} // namespace mildns::decay
