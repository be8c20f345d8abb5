#include "generators.hpp"

#include "mildns/errors.hpp"
#include "mildns/format.hpp"
#include "mildns/initial_data.hpp"
#include "mildns/spaces.hpp"

#include <doctest.h>

#include <numbers>
#include <sstream>

using namespace mildns;
using namespace mildns::spaces;
using mildns::spectral::cosine_mode;
using mildns::spectral::heat_semigroup;
using mildns::spectral::periodic_gaussian;
using mildns::spectral::PhysicalField;
using mildns::spectral::sine_mode;

namespace {

constexpr double pi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Scalar in component 0, zeros elsewhere; the norms do not care about
// divergence.
VectorField embed(const SpectralField& f) {
    VectorField v(f.grid());
    v[0] = f;
    return v;
}

Trajectory heat_of(const SpectralField& f, const std::vector<double>& times) {
    Trajectory tr(f.grid());
    for (double t : times) tr.push_back(t, embed(heat_semigroup(f, t)));
    return tr;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
    return out;
}

// int_0^{2pi} |cos|^q / 2pi.
double cos_moment(double q) {
    return std::tgamma(0.5 * (q + 1.0)) / (std::sqrt(pi) * std::tgamma(0.5 * q + 1.0));
}

} // namespace

TEST_CASE("NormSpec") {
    CHECK_THROWS_AS(NormSpec(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(NormSpec(0.0, 0.5), DomainError);
    CHECK_THROWS_AS(NormSpec(0.0, kInfinity), DomainError);
    const NormSpec s(0.5, 4.0);
    CHECK(s.alpha(2) == 0.5 + 1.0 - 0.5);
    CHECK(s.alpha(3) == 0.5 + 1.0 - 0.75);
}

TEST_CASE("lq_norm closed forms") {
    const GridSpec g(2, 32, 3.0);
    PhysicalField c(g);
    for (auto& v : c.values) v = -2.0;
    const auto fc = spectral::to_spectral(c);
    for (double q : {1.0, 2.0, 3.5}) CHECK(rel(lq_norm(fc, q), 2.0 * std::pow(9.0, 1.0 / q)) < 1e-13);
    CHECK(lq_norm(fc, kInfinity) == doctest::Approx(2.0));

    const auto s = sine_mode(g, {1, 0, 0});
    CHECK(rel(lq_norm(s, 2.0), 3.0 / std::sqrt(2.0)) < 1e-13);
    // |sin|^q moments are exact on the grid for q = 4 (trig polynomial of degree 4 < N)
    CHECK(rel(lq_norm(s, 4.0), std::pow(9.0 * cos_moment(4.0), 0.25)) < 1e-13);

    gen::Gen r(1);
    for (int trial = 0; trial < 10; ++trial) {
        const auto gg = r.grid();
        const auto f = r.field(gg, false, false);
        CHECK(rel(lq_norm(f, 2.0), std::sqrt(spectral::inner_product(f, f))) < 1e-12);
    }
}

TEST_CASE("sobolev_norm") {
    gen::Gen r(2);
    const GridSpec g(2, 32, 2.0 * pi);
    const auto f = r.field(g);
    CHECK(sobolev_norm(f, NormSpec(0.0, 3.0)) == lq_norm(f, 3.0));

    const auto mode = cosine_mode(g, {3, 1, 0});
    const double k = std::sqrt(10.0);
    for (double s : {-0.5, 0.0, 1.0, 2.5}) {
        for (double q : {1.5, 2.0, 4.0}) {
            CHECK(rel(sobolev_norm(mode, NormSpec(s, q)), std::pow(k, s) * lq_norm(mode, q)) <
                  1e-12);
        }
    }

    // s = 1, q = 2: coefficient sum against quadrature of the gradient
    double coeff = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) coeff += g.k_squared(i) * std::norm(f[i]);
    coeff = std::sqrt(coeff * g.volume());
    const auto grad = spectral::gradient(f);
    CHECK(rel(sobolev_norm(f, NormSpec(1.0, 2.0)), coeff) < 1e-12);
    CHECK(rel(lq_norm(grad, 2.0), coeff) < 1e-12);

    SpectralField with_mean = f;
    with_mean[0] = 1.0;
    CHECK_THROWS_AS(sobolev_norm(with_mean, NormSpec(-0.5, 2.0)), ZeroModeError);
}

TEST_CASE("property: sobolev_norm is continuous in s on band-limited fields") {
    gen::Gen r(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = r.grid(32, 16);
        const auto f = r.field(g);
        const double q = r.uniform(1.5, 6.0);
        double prev = sobolev_norm(f, NormSpec(-1.0, q));
        for (double s = -0.99; s <= 2.0; s += 0.01) {
            const double cur = sobolev_norm(f, NormSpec(s, q));
            CHECK(std::abs(cur - prev) <= 0.1 * prev);
            prev = cur;
        }
    }
}

TEST_CASE("besov_norm") {
    const GridSpec g(2, 64, 2.0 * pi);
    CHECK(besov_norm(SpectralField(g), BesovSpec::for_grid(g, -0.5, 4.0)) == 0.0);
    CHECK_THROWS_AS(BesovSpec(0.0, 2.0, 0.1, 1.0, 2.0), HypothesisError);
    CHECK_THROWS_AS(BesovSpec(0.5, 2.0, 0.1, 1.0, 2.0), HypothesisError);
    CHECK_THROWS_AS(BesovSpec(-0.5, 2.0, 0.1, 1.0, 1.0), DomainError);

    // single mode: sup_t t^{-s/2} e^{-t k^2} = (-s / (2 e k^2))^{-s/2} at t* = -s / 2k^2
    for (auto m : {std::array<int, 3>{1, 0, 0}, {3, 2, 0}, {6, 7, 0}, {15, 4, 0}}) {
        const auto mode = cosine_mode(g, m);
        const double k2 = m[0] * m[0] + m[1] * m[1];
        for (double s : {-0.25, -0.5, -1.0}) {
            const double sup = std::pow(-s / (2.0 * std::exp(1.0) * k2), -0.5 * s);
            for (double q : {2.0, 4.0}) {
                const double v = besov_norm(mode, BesovSpec::for_grid(g, s, q));
                const double exact = sup * lq_norm(mode, q);
                CHECK(v <= exact * (1.0 + 1e-12));
                CHECK(v >= 0.98 * exact);
            }
        }
    }

    gen::Gen r(4);
    const auto f = r.field(g);
    const auto spec = BesovSpec::for_grid(g, -0.5, 4.0);
    CHECK(rel(besov_norm(-3.0 * f, spec), 3.0 * besov_norm(f, spec)) < 1e-13);
    SpectralField with_mean = f;
    with_mean[0] = 0.5;
    CHECK_THROWS_AS(besov_norm(with_mean, spec), ZeroModeError);
}

TEST_CASE("property: L^d embeds into the critical Besov space with a stable constant") {
    // d = 2, q~ = 4: besov(f, 2/4 - 1, 4) <= C ||f||_2
    double c_coarse = 0.0, c_fine = 0.0;
    for (int n : {32, 64}) {
        const GridSpec g(2, n, 2.0 * pi);
        double c = 0.0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            for (double beta : {0.5, 1.0, 2.0}) {
                const auto f = spectral::random_slope_scalar(g, beta, seed);
                c = std::max(c, besov_norm(f, BesovSpec::for_grid(g, -0.5, 4.0)) / lq_norm(f, 2.0));
            }
        }
        (n == 32 ? c_coarse : c_fine) = c;
    }
    CHECK(c_fine > 0.0);
    CHECK(c_fine / c_coarse < 2.0);
    CHECK(c_coarse / c_fine < 2.0);
}

TEST_CASE("property: norms are homogeneous and vanish only on zero") {
    gen::Gen r(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = r.grid(32, 16);
        const auto f = r.field(g);
        const double c = r.uniform(-4.0, 4.0);
        const double q = r.uniform(1.2, 5.0);
        const double s = r.uniform(-0.5, 1.5);
        CHECK(rel(lq_norm(c * f, q), std::abs(c) * lq_norm(f, q)) < 1e-13);
        CHECK(rel(sobolev_norm(c * f, NormSpec(s, q)), std::abs(c) * sobolev_norm(f, NormSpec(s, q))) <
              1e-13);
        CHECK(lq_norm(f, q) > 0.0);
        CHECK(sobolev_norm(SpectralField(g), NormSpec(s, q)) == 0.0);
    }
}

TEST_CASE("trajectory") {
    const GridSpec g(2, 8, 1.0);
    Trajectory tr(g, "abc");
    CHECK_THROWS_AS(tr.push_back(-0.1, VectorField(g)), DomainError);
    tr.push_back(0.0, VectorField(g));
    tr.push_back(0.5, VectorField(g));
    CHECK_THROWS_AS(tr.push_back(0.5, VectorField(g)), DomainError);
    CHECK_THROWS_AS(tr.push_back(0.2, VectorField(g)), DomainError);
    CHECK_THROWS_AS(tr.push_back(1.0, VectorField(GridSpec(2, 16, 1.0))), DimensionError);
    CHECK(tr.index_of(0.5).value() == 1);
    CHECK_FALSE(tr.index_of(0.25).has_value());
    CHECK(tr.config_hash() == "abc");
}

TEST_CASE("kato_norm") {
    const GridSpec g(2, 16, 2.0 * pi);
    Trajectory zero(g);
    for (double t : {0.0, 0.5, 1.0}) zero.push_back(t, VectorField(g));
    CHECK(kato_norm(zero, NormSpec(0.0, 4.0)) == 0.0);
    CHECK_THROWS_AS(kato_norm(Trajectory(g), NormSpec(0.0, 4.0)), DomainError);

    // alpha = 0 (s = d/q - 1): plain sup including t = 0
    gen::Gen r(6);
    const auto f = r.field(g);
    const auto tr = heat_of(f, {0.0, 0.1, 0.2});
    const NormSpec crit(0.0, 2.0);
    CHECK(crit.alpha(2) == 0.0);
    CHECK(kato_norm(tr, crit) == sobolev_norm(tr[0], crit));
}

TEST_CASE("kato_norm of a Gaussian heat trajectory is attained inside and resolves") {
    // t^{1/4} ||G_{a+t}||_4 peaks at t = a/2 on the whole space
    const double a = 0.25;
    const GridSpec g(2, 128, 20.0);
    const auto f = periodic_gaussian(g, a);
    const NormSpec spec(0.0, 4.0);
    const auto coarse = heat_of(f, linspace(0.0, 1.0, 21));
    const auto dense = heat_of(f, linspace(0.0, 1.0, 401));
    const double kc = kato_norm(coarse, spec), kd = kato_norm(dense, spec);
    CHECK(std::isfinite(kc));
    CHECK(kc <= kd * (1.0 + 1e-12));
    CHECK(kc >= kd * (1.0 - 1e-2));
    std::size_t argmax = 0;
    double best = 0.0;
    for (std::size_t i = 1; i < dense.size(); ++i) {
        const double v = std::pow(dense.time(i), 0.25) * sobolev_norm(dense[i], spec);
        if (v > best) best = v, argmax = i;
    }
    CHECK(argmax > 0);
    CHECK(argmax + 1 < dense.size());
    CHECK(dense.time(argmax) == doctest::Approx(a / 2).epsilon(0.05));

    // restricting the horizon never increases the sup
    for (double h : {0.05, 0.1, 0.3, 0.7}) CHECK(kato_norm(dense, spec, ComponentSelector::all(), h) <= kd);
    CHECK(kato_norm(dense, spec, ComponentSelector::only(1)) == 0.0);
}

TEST_CASE("rescaled_norm_series") {
    const GridSpec g(2, 128, 20.0);
    Trajectory zero(g);
    for (double t : {0.0, 0.5, 1.0}) zero.push_back(t, VectorField(g));
    for (const auto& p : rescaled_norm_series(zero, NormSpec(0.0, 2.0), 0)) {
        CHECK(p.raw == 0.0);
        CHECK(p.rescaled == 0.0);
    }
    CHECK_THROWS_AS(rescaled_norm_series(zero, NormSpec(0.0, 2.0), 1), DomainError);

    // s = 0, q = 2, d = 2: exponent 0, and the mean-free L^2 norm of G_b is
    // ((8 pi b)^{-1} - L^{-2})^{1/2} up to periodic images of size exp(-L^2/8b)
    const double a = 0.25, L = 20.0;
    const auto times = linspace(0.0, 1.0, 11);
    const auto tr = heat_of(periodic_gaussian(g, a), times);
    const auto series = rescaled_norm_series(tr, NormSpec(0.0, 2.0), 0);
    REQUIRE(series.size() == times.size());
    for (const auto& p : series) {
        const double exact = std::sqrt(1.0 / (8.0 * pi * (a + p.t)) - 1.0 / (L * L));
        CHECK(rel(p.raw, exact) < 1e-6);
        CHECK(p.rescaled == p.raw);
    }
    // s = 1, q = 4: exponent (1 + 1 - 1/2)/2 = 3/4, t = 0 dropped
    const auto s2 = rescaled_norm_series(tr, NormSpec(1.0, 4.0), 0);
    CHECK(s2.size() == times.size() - 1);
    CHECK(velocity_rescale_exponent(NormSpec(1.0, 4.0), 0, 2) == 0.75);
    CHECK(s2[3].rescaled == std::pow(s2[3].t, 0.75) * s2[3].raw);

    const auto again = rescaled_norm_series(tr, NormSpec(1.0, 4.0), 0);
    for (std::size_t i = 0; i < s2.size(); ++i) CHECK(again[i].rescaled == s2[i].rescaled);
}

TEST_CASE("series CSV round trip") {
    SeriesInfo info{2, "pressure", 0.5, 4.0, 1, 1.0 / 3.0};
    std::vector<NormSample> samples{{0.1, 1.0 / 7.0, 2.0 / 3.0}, {0.2, 1e-300, 5e20}};
    std::stringstream buf;
    write_series_csv(buf, info, samples);
    const auto text = buf.str();
    CHECK(text.rfind("# mildns norm series\n", 0) == 0);
    CHECK(text.find("t,raw_norm,rescaled_norm,s,q,n\n") != std::string::npos);
    const auto back = read_series_csv(buf);
    CHECK(back.info.kind == "pressure");
    CHECK(back.info.exponent == info.exponent);
    REQUIRE(back.samples.size() == 2);
    CHECK(back.samples[0].raw == samples[0].raw);
    CHECK(back.samples[1].rescaled == samples[1].rescaled);
}

TEST_CASE("format_double is exact and locale independent") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
        const auto s = format_double(v);
        CHECK(std::stod(s) == v);
        CHECK(s.find(',') == std::string::npos);
    }
    CHECK(format_double(std::nan("")) == "nan");
}
