#pragma once

#include "mildns/spaces.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mildns::decay {

using spaces::NormSpec;
using spaces::Trajectory;

enum class QuantityKind { velocity, pressure };

std::string to_string(QuantityKind kind);
QuantityKind parse_quantity_kind(const std::string& name);

/// Which rescaled norm a decay report watches. `data_p` is the
/// integrability of the initial data space H^{d/p - 1}_p, which fixes the
/// admissible range of (s, q).
struct ExponentSpec {
    double s = 0.0;
    double q = 2.0;
    int n = 0;
    QuantityKind kind = QuantityKind::velocity;
    double data_p = 2.0;

    NormSpec norm() const { return NormSpec(s, q); }
    /// Throws HypothesisError when (s, q, n) lies outside the admissible range.
    void validate(int dim) const;
};

/// velocity: (s + 1 + 2n - d/q)/2, pressure: (s + 2 - d/q)/2.
double theoretical_exponent(const ExponentSpec& spec, int dim);

struct FitResult {
    /// Power of t (negative for decay).
    double exponent = 0.0;
    double r_squared = 1.0;
    std::size_t samples = 0;
};

struct FitWindow {
    double t_lo;
    double t_hi;
};

/// Ordinary least squares of log(value) against log(t) over samples with
/// t_lo <= t <= t_hi. Needs at least five samples; values must be positive.
FitResult fit_decay_exponent(const std::vector<std::pair<double, double>>& series,
                             FitWindow window);

enum class Trend { increasing, flat, decreasing };
std::string to_string(Trend trend);

/// Spearman rank correlation; 0 for fewer than two samples or constant input.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Window on which whole-space decay is observable on the periodic box:
/// [10 (L/N)^2, (L/2pi)^2 / 4].
FitWindow validity_window(const spaces::GridSpec& grid);

struct DecayReport {
    ExponentSpec spec;
    int dim = 2;
    double theoretical_exponent = 0.0;
    double fitted_exponent = 0.0;
    FitWindow window{0.0, 0.0};
    double r_squared = 1.0;
    std::size_t samples = 0;
    double spearman_tail = 0.0;
    Trend rescaled_trend = Trend::flat;
    double slack = 0.15;
    bool degenerate = false;
    bool pass = false;
};

struct ReportOptions {
    double slack = 0.15;
    /// |rho| above this marks a trend as increasing/decreasing.
    double trend_threshold = 0.2;
    int max_derivative_order = 4;
};

/// Rescaled series of the requested quantity: velocity derivatives via the
/// equation recursion, or the pressure.
std::vector<spaces::NormSample> quantity_series(const Trajectory& traj, const ExponentSpec& spec,
                                                int max_derivative_order = 4);

/// Clips `requested` to the validity window (throws DomainError when they do
/// not overlap), fits the raw series and classifies the rescaled tail.
/// PASS iff fitted <= -theoretical + slack and the tail is not increasing.
DecayReport decay_report(const Trajectory& traj, const ExponentSpec& spec, FitWindow requested,
                         const ReportOptions& options = {});

/// Same, from a precomputed series.
DecayReport decay_report_from_series(const std::vector<spaces::NormSample>& series,
                                     const ExponentSpec& spec, int dim, FitWindow window,
                                     const ReportOptions& options = {});

/// "key = value" record under a "[decay_report]" heading.
void write_report_record(std::ostream& out, const DecayReport& report);

/// CSV with one row per report:
/// kind,s,q,n,theoretical_exponent,fitted_exponent,r_squared,t_lo,t_hi,samples,trend,verdict
void write_exponent_table(std::ostream& out, const std::vector<DecayReport>& reports);

} // namespace mildns::decay
