#pragma once

#include "mildns/field.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mildns::verify {

using spectral::GridSpec;
using spectral::SpectralField;

/// Recipe for a sample family; rebuilt on each grid of a refinement pair.
struct FamilySpec {
    int dim = 2;
    double length = 6.283185307179586;
    /// Axis-aligned cosine modes with these integer wavenumbers, plus one
    /// diagonal mode (1, 1).
    std::vector<int> axis_modes{1, 2, 4};
    /// Heat-kernel times of the Gaussians, in units of L^2; mean removed.
    std::vector<double> gaussian_widths{0.01, 0.03, 0.1};
    std::vector<double> betas{1.0, 1.5, 2.0};
    int seeds = 20;
    std::uint64_t first_seed = 1;
};

struct Family {
    GridSpec grid;
    std::vector<std::string> labels;
    std::vector<SpectralField> members;
};

Family build_family(const FamilySpec& spec, int modes);

/// Supremum/infimum of a ratio over a sample set on one grid.
struct RatioStats {
    double worst = 0.0;
    double lowest = 0.0;
    std::size_t count = 0;
};

/// Outcome of one inequality check on a refinement pair N -> 2N.
struct InequalityCheck {
    std::string name;
    std::string params;
    std::size_t sample_count = 0;
    /// sup of LHS / (RHS without constant) on the fine grid.
    double worst_ratio = 0.0;
    double fitted_C = 0.0;
    /// Two-sided checks only: inf of the ratio (lower constant).
    double lower_C = 0.0;
    double coarse_worst = 0.0;
    double coarse_lower = 0.0;
    /// worst_ratio(fine) / worst_ratio(coarse).
    double refinement_stability = 1.0;
    bool pass = false;
};

/// Geometric time grid t_lo, t_lo r, ..., <= t_hi.
std::vector<double> geometric_times(double t_lo, double t_hi, double ratio);

// Ratio evaluations on one family/grid. Each validates its
// parameters and throws DomainError/HypothesisError on violations.

/// ||Lambda^s e^{t Lap} f||_q t^{d/2 (1/p - 1/q) + s/2} / ||f||_p.
RatioStats smoothing_ratios(const std::vector<SpectralField>& family, double p, double q, double s,
                            const std::vector<double>& times);

struct ProductExponents {
    double r, p1, q1, p2, q2;
};

/// ||fg||_{H^s_r} / (||f||_{H^s_p1} ||g||_q1 + ||f||_p2 ||g||_{H^s_q2}) over (f, g) pairs.
RatioStats product_ratios(const std::vector<SpectralField>& fs, const std::vector<SpectralField>& gs,
                          const ProductExponents& e, double s);

/// max_j ||R_j f||_q / ||f||_q.
RatioStats riesz_ratios(const std::vector<SpectralField>& family, double q);

/// ||f||_{H^{s2}_{q2}} / ||f||_{H^{s1}_{q1}} under s1 - d/q1 = s2 - d/q2.
RatioStats embedding_ratios(const std::vector<SpectralField>& family, double s1, double q1,
                            double s2, double q2);

/// besov_norm / dyadic_shell_norm.
RatioStats besov_ratios(const std::vector<SpectralField>& family, double s, double q);

/// sup_j 2^{js} ||Delta_j f||_q with Delta_j keeping 2^j <= |k| < 2^{j+1}.
double dyadic_shell_norm(const SpectralField& f, double s, double q);

InequalityCheck check_smoothing(const FamilySpec& family, int modes, double p, double q, double s,
                                const std::vector<double>& times);
InequalityCheck check_product(const FamilySpec& family, int modes, const ProductExponents& e,
                              double s);
InequalityCheck check_riesz_bound(const FamilySpec& family, int modes, double q);
InequalityCheck check_embedding(const FamilySpec& family, int modes, double s1, double q1,
                                double s2, double q2);
InequalityCheck check_besov_equivalence(const FamilySpec& family, int modes, double s, double q);

enum class Half { lower, upper };

struct BetaIntegral {
    /// int over [0, 1/2] (lower) or [1/2, 1] (upper) of (1 - tau)^-gamma tau^-theta.
    double value = 0.0;
    /// max over t in {1, 2, 5} of |I(t) t^{gamma + theta - 1} / I(1) - 1|, where
    /// I(t) integrates over [0, t/2] resp. [t/2, t].
    double scaling_spread = 0.0;
};

/// Throws DivergentIntegralError when theta >= 1 (lower) or gamma >= 1 (upper).
BetaIntegral beta_integral(double gamma, double theta, Half half);

/// CSV: name,params,sample_count,worst_ratio,fitted_C,lower_C,stability,verdict.
void write_check_header(std::ostream& out);
void write_check_row(std::ostream& out, const InequalityCheck& check);

} // namespace mildns::verify
