#pragma once

#include "mildns/field.hpp"

#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace mildns::spaces {

using spectral::GridSpec;
using spectral::SpectralField;
using spectral::VectorField;

/// Regularity/integrability pair (s, q) of the space H^s_q, q in (1, inf).
class NormSpec {
public:
    NormSpec(double s, double q);

    double s() const noexcept { return s_; }
    double q() const noexcept { return q_; }
    /// Critical exponent alpha = s + 1 - d/q.
    double alpha(int dim) const noexcept { return s_ + 1.0 - dim / q_; }

private:
    double s_;
    double q_;
};

/// Besov index pair (s < 0, q) with the geometric time grid on which the
/// heat characterisation sup_t t^{-s/2} ||e^{t Lap} f||_q is sampled.
class BesovSpec {
public:
    BesovSpec(double s, double q, double t_min, double t_max, double ratio);

    /// t_min = (L/(2 pi N))^2, t_max = (L/2pi)^2, ratio 2^{1/4}.
    static BesovSpec for_grid(const GridSpec& grid, double s, double q);

    double s() const noexcept { return s_; }
    double q() const noexcept { return q_; }
    std::vector<double> times() const;

private:
    double s_;
    double q_;
    double t_min_;
    double t_max_;
    double ratio_;
};

/// Time-stamped velocity samples on one grid.
class Trajectory {
public:
    explicit Trajectory(const GridSpec& grid, std::string config_hash = {});

    void push_back(double t, VectorField u);

    const GridSpec& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }
    double time(std::size_t i) const { return times_.at(i); }
    const std::vector<double>& times() const noexcept { return times_; }
    const VectorField& operator[](std::size_t i) const { return samples_.at(i); }
    VectorField& operator[](std::size_t i) { return samples_.at(i); }
    double horizon() const { return times_.back(); }
    /// Index of the sample at time t (exact match within 1e-12 relative).
    std::optional<std::size_t> index_of(double t) const;

    const std::string& config_hash() const noexcept { return config_hash_; }
    void set_config_hash(std::string h) { config_hash_ = std::move(h); }

private:
    GridSpec grid_;
    std::vector<double> times_;
    std::vector<VectorField> samples_;
    std::string config_hash_;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Uniform-grid Riemann sum (sum |f|^q (L/N)^d)^{1/q}; q = inf gives the max.
double lq_norm(const SpectralField& f, double q);
/// Root-sum-square of component norms.
double lq_norm(const VectorField& u, double q);

double sobolev_norm(const SpectralField& f, const NormSpec& spec);
double sobolev_norm(const VectorField& u, const NormSpec& spec);

/// Heat-semigroup estimate of the homogeneous Besov norm B^{s,inf}_q.
double besov_norm(const SpectralField& f, const BesovSpec& spec);
double besov_norm(const VectorField& u, const BesovSpec& spec);

/// Selects one velocity component, or all of them (root-sum-square).
struct ComponentSelector {
    std::optional<int> component;

    static ComponentSelector all() { return {}; }
    static ComponentSelector only(int i) { return {i}; }
};

/// sup over samples with 0 < t <= horizon of t^{alpha/2} ||u(t)||_{H^s_q}.
/// Samples at t = 0 are used only when alpha = 0.
double kato_norm(const Trajectory& traj, const NormSpec& spec,
                 ComponentSelector which = ComponentSelector::all(),
                 double horizon = kInfinity);

/// Kato norm of the difference of two trajectories on the same mesh.
double kato_distance(const Trajectory& a, const Trajectory& b, const NormSpec& spec);

struct NormSample {
    double t;
    double raw;
    double rescaled;
};

/// Supplies the n-th time derivative of the velocity at sample `index`.
using DerivativeProvider =
    std::function<VectorField(const Trajectory&, std::size_t index, int order)>;

/// Exponent (s + 1 + 2n - d/q)/2 of the velocity envelope.
double velocity_rescale_exponent(const NormSpec& spec, int order, int dim);

/// (t, ||D_t^n u||_{H^s_q}, t^{(s+1+2n-d/q)/2} ||D_t^n u||) for every sample
/// with t > 0 (t = 0 is kept when the exponent is exactly 0).
std::vector<NormSample> rescaled_norm_series(const Trajectory& traj, const NormSpec& spec,
                                             int order,
                                             const DerivativeProvider& derivative = {});

/// Descriptive header of a norm-series CSV.
struct SeriesInfo {
    int dim = 2;
    /// "velocity" or "pressure".
    std::string kind = "velocity";
    double s = 0.0;
    double q = 2.0;
    int n = 0;
    /// Power of t applied to obtain the rescaled column.
    double exponent = 0.0;
};

/// CSV layout:
///   # mildns norm series
///   # dim=<d> kind=<velocity|pressure> s=<s> q=<q> n=<n> exponent=<theta>
///   t,raw_norm,rescaled_norm,s,q,n
///   one row per sample, numbers with 17 significant digits.
void write_series_csv(std::ostream& out, const SeriesInfo& info,
                      const std::vector<NormSample>& series);

struct SeriesFile {
    SeriesInfo info;
    std::vector<NormSample> samples;
};

SeriesFile read_series_csv(std::istream& in);

} // namespace mildns::spaces
