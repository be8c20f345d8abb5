#include "generators.hpp"

#include "mildns/errors.hpp"
#include "mildns/field_io.hpp"
#include "mildns/initial_data.hpp"

#include <doctest.h>

#include <filesystem>
#include <numbers>

using namespace mildns;
using namespace mildns::spectral;

namespace {

constexpr double pi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// L^2 norm squared by physical-space quadrature.
double quadrature_l2sq(const SpectralField& f) {
    const auto p = to_physical(f);
    double acc = 0.0;
    for (double v : p.values) acc += v * v;
    return acc * f.grid().cell_volume();
}

double max_imag(const SpectralField& f) {
    double m = 0.0;
    for (auto z : to_physical_complex(f)) m = std::max(m, std::abs(z.imag()));
    return m;
}

double max_real(const SpectralField& f) {
    double m = 0.0;
    for (auto z : to_physical_complex(f)) m = std::max(m, std::abs(z.real()));
    return m;
}

} // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec(1, 16, 1.0), DomainError);
    CHECK_THROWS_AS(GridSpec(4, 16, 1.0), DomainError);
    CHECK_THROWS_AS(GridSpec(2, 4, 1.0), DomainError);
    CHECK_THROWS_AS(GridSpec(2, 12, 1.0), DomainError);
    CHECK_THROWS_AS(GridSpec(2, 16, 0.0), DomainError);
    CHECK_THROWS_AS(GridSpec(2, 16, -1.0), DomainError);
    CHECK_NOTHROW(GridSpec(3, 8, 2.0));
}

TEST_CASE("wavenumbers are reproducible and follow the storage convention") {
    const GridSpec a(2, 16, 3.0), b(2, 16, 3.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (int ax = 0; ax < 2; ++ax) {
            CHECK(a.wavenumber(i, ax) == b.wavenumber(i, ax));
            const int m = a.mode_index(i, ax);
            CHECK(a.wavenumber(i, ax) == 2.0 * pi / 3.0 * m);
            CHECK(m >= -8);
            CHECK(m < 8);
        }
    }
    CHECK(a.mode_index(a.flat_index({-8, 3, 0}), 0) == -8);
    CHECK(a.is_nyquist(a.flat_index({-8, 3, 0})));
    CHECK(a.derivative_wavenumber(a.flat_index({-8, 3, 0}), 0) == 0.0);
    CHECK(a.wavenumber(a.flat_index({-8, 3, 0}), 0) != 0.0);
}

TEST_CASE("transform: constant and single mode") {
    const GridSpec g(2, 16, 2.0);
    PhysicalField c(g);
    for (auto& v : c.values) v = 3.5;
    const auto fc = to_spectral(c);
    CHECK(std::abs(fc[0] - Complex(3.5, 0.0)) < 1e-14);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(std::abs(fc[i]) < 1e-14);

    PhysicalField s(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        s.values[i] = std::sin(2.0 * pi * g.coordinate(i, 0) / g.length());
    }
    const auto fs = to_spectral(s);
    const auto kp = g.flat_index({1, 0, 0}), km = g.flat_index({-1, 0, 0});
    CHECK(std::abs(fs[kp] - Complex(0.0, -0.5)) < 1e-14);
    CHECK(std::abs(fs[km] - Complex(0.0, 0.5)) < 1e-14);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i != kp && i != km) CHECK(std::abs(fs[i]) < 1e-14);
    }
}

TEST_CASE("transform: size mismatch") {
    const GridSpec g(2, 8, 1.0);
    std::vector<Complex> a(10), b(g.size());
    CHECK_THROWS_AS(forward(g, a, b), DimensionError);
    CHECK_THROWS_AS(PhysicalField(g, std::vector<double>(3)), DimensionError);
    CHECK_THROWS_AS(SpectralField(g, std::vector<Complex>(3)), DimensionError);
}

TEST_CASE("property: transform round trip and Plancherel") {
    gen::Gen r(11);
    for (int trial = 0; trial < 25; ++trial) {
        const auto g = r.grid();
        PhysicalField p(g);
        for (auto& v : p.values) v = r.uniform(-2.0, 2.0);
        const auto back = to_physical(to_spectral(p));
        double err = 0.0, mag = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            err = std::max(err, std::abs(back.values[i] - p.values[i]));
            mag = std::max(mag, std::abs(p.values[i]));
        }
        CHECK(err <= 1e-13 * mag);

        const auto f = r.field(g, false, false);
        CHECK(rel(quadrature_l2sq(f), inner_product(f, f)) < 1e-12);
    }
}

TEST_CASE("fractional laplacian") {
    gen::Gen r(3);
    const GridSpec g(2, 32, 2.0 * pi);
    const auto f = r.field(g);
    CHECK(gen::max_diff(fractional_laplacian(f, 0.0), f) < 1e-15);

    const auto mode = cosine_mode(g, {2, 3, 0});
    const auto lap = laplacian(mode);
    const auto l2 = fractional_laplacian(mode, 2.0);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(l2[i] + lap[i]) < 1e-12);
    CHECK(std::abs(l2[g.flat_index({2, 3, 0})].real() - 0.5 * 13.0) < 1e-12);

    SpectralField with_mean = f;
    with_mean[0] = 1.0;
    CHECK_THROWS_AS(fractional_laplacian(with_mean, -0.5), ZeroModeError);
    CHECK(fractional_laplacian(with_mean, 0.5)[0] == Complex{});
    CHECK(fractional_laplacian(with_mean, 0.0)[0] == Complex{});
}

TEST_CASE("property: Lambda^1 Lambda^1 = Lambda^2 and Lambda^s commutes") {
    gen::Gen r(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = r.grid();
        const auto f = r.field(g);
        const double scale = f.max_abs() * std::pow(g.max_wavenumber(), 2);
        const auto a = fractional_laplacian(fractional_laplacian(f, 1.0), 1.0);
        CHECK(gen::max_diff(a, fractional_laplacian(f, 2.0)) <= 1e-12 * scale);

        const double s = r.uniform(-1.0, 2.0);
        const double t = r.uniform(0.0, 0.1);
        const auto x = fractional_laplacian(heat_semigroup(f, t), s);
        const auto y = heat_semigroup(fractional_laplacian(f, s), t);
        const double mag = fractional_laplacian(f, s).max_abs();
        CHECK(gen::max_diff(x, y) <= 1e-13 * mag);
        const int j = r.integer(0, g.dim() - 1);
        const auto u = fractional_laplacian(riesz_transform(f, j), s);
        const auto v = riesz_transform(fractional_laplacian(f, s), j);
        CHECK(gen::max_diff(u, v) <= 1e-13 * mag);
    }
}

TEST_CASE("riesz transform") {
    const GridSpec g(2, 16, 5.0);
    const auto s = sine_mode(g, {1, 0, 0});
    const auto c = cosine_mode(g, {1, 0, 0});
    CHECK(gen::max_diff(riesz_transform(s, 0), c) < 1e-15);
    const SpectralField zero(g);
    CHECK(riesz_transform(zero, 1).max_abs() == 0.0);
    SpectralField with_mean = s;
    with_mean[0] = 0.25;
    CHECK_THROWS_AS(riesz_transform(with_mean, 0), ZeroModeError);

    gen::Gen r(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto gg = r.grid();
        const auto f = r.field(gg);
        SpectralField sum(gg);
        for (int j = 0; j < gg.dim(); ++j) sum += riesz_transform(riesz_transform(f, j), j);
        sum += f;
        CHECK(sum.max_abs() <= 1e-12 * f.max_abs());
    }
}

TEST_CASE("leray projection") {
    gen::Gen r(21);
    const GridSpec g(2, 32, 2.0 * pi);
    const auto phi = r.field(g);
    const auto grad = gradient(phi);
    CHECK(leray_project(grad).max_abs() <= 1e-12 * grad.max_abs());

    const auto tg = make_initial_data({}, g);
    CHECK(gen::max_diff(leray_project(tg), tg) <= 1e-13);

    for (int trial = 0; trial < 20; ++trial) {
        const auto gg = r.grid();
        const auto v = r.vector(gg);
        const auto w = r.vector(gg);
        const auto pv = leray_project(v);
        CHECK(divergence_defect(pv) <= 1e-12);
        CHECK(inner_product(pv, pv) <= inner_product(v, v) * (1.0 + 1e-14));
        CHECK(gen::max_diff(leray_project(pv), pv) <= 1e-12 * pv.max_abs());
        const auto pw = leray_project(w);
        const double orth = inner_product(pv, w - pw);
        CHECK(std::abs(orth) <= 1e-12 * std::sqrt(inner_product(v, v) * inner_product(w, w)));
    }
}

TEST_CASE("heat semigroup") {
    gen::Gen r(2);
    const GridSpec g(3, 16, 4.0);
    const auto f = r.field(g, false);
    CHECK(gen::max_diff(heat_semigroup(f, 0.0), f) == 0.0);
    CHECK_THROWS_AS(heat_semigroup(f, -1e-3), DomainError);

    const auto mode = cosine_mode(g, {1, 2, 2});
    const double k2 = std::pow(2.0 * pi / 4.0, 2) * 9.0;
    const auto h = heat_semigroup(mode, 0.3);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(std::abs(h[i] - std::exp(-0.3 * k2) * mode[i]) < 1e-16);
    }

    for (int trial = 0; trial < 20; ++trial) {
        const auto gg = r.grid();
        const auto ff = r.field(gg, false, false);
        const double t = r.uniform(0.0, 0.5), s = r.uniform(0.0, 0.5);
        const auto a = heat_semigroup(heat_semigroup(ff, t), s);
        const auto b = heat_semigroup(ff, t + s);
        CHECK(gen::max_diff(a, b) <= 1e-13 * ff.max_abs());
        CHECK(quadrature_l2sq(b) <= quadrature_l2sq(ff) * (1.0 + 1e-14));
    }
}

TEST_CASE("heat semigroup: Gaussian oracle") {
    // G_a(x) = (4 pi a)^{-1} exp(-|x - c|^2 / 4a) on d = 2, box L = 20 >= 20 sqrt(a + t)
    const double a = 0.25, t = 0.75, L = 20.0;
    const GridSpec g(2, 128, L);
    const auto evolved = to_physical(heat_semigroup(periodic_gaussian(g, a), t));
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double dx = g.coordinate(i, 0) - L / 2, dy = g.coordinate(i, 1) - L / 2;
        const double exact =
            std::exp(-(dx * dx + dy * dy) / (4.0 * (a + t))) / (4.0 * pi * (a + t));
        err = std::max(err, std::abs(evolved.values[i] - exact));
    }
    CHECK(err < 1e-10);
}

TEST_CASE("nonlinear term") {
    const GridSpec g(2, 32, 2.0 * pi);
    const auto tg = make_initial_data({}, g);
    CHECK(nonlinear_term(tg, tg).max_abs() <= 1e-12);
    // the unprojected term is a pure gradient: grad of -(cos 2x + cos 2y)/4
    const auto raw = divergence(tensor_product(tg, tg));
    SpectralField phi = cosine_mode(g, {2, 0, 0}) + cosine_mode(g, {0, 2, 0});
    phi *= -0.25;
    CHECK(gen::max_diff(raw, gradient(phi)) <= 1e-13);

    gen::Gen r(4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto gg = r.grid(32, 16);
        const auto u = r.vector(gg), v = r.vector(gg);
        CHECK(nonlinear_term(u, VectorField(gg)).max_abs() == 0.0);
        const double a = r.uniform(-3.0, 3.0), b = r.uniform(-3.0, 3.0);
        const auto lhs = nonlinear_term(a * u, b * v);
        auto rhs = nonlinear_term(u, v);
        rhs *= a * b;
        CHECK(gen::max_diff(lhs, rhs) <= 1e-13 * rhs.max_abs() * 10.0);
        CHECK(divergence_defect(lhs) <= 1e-12);
    }
}

TEST_CASE("property: operators keep fields real") {
    gen::Gen r(17);
    for (int trial = 0; trial < 15; ++trial) {
        const auto g = r.grid(32, 16);
        const auto u = r.vector(g);
        const auto f = u[0];
        const std::vector<SpectralField> outs{
            fractional_laplacian(f, r.uniform(-1.0, 2.0)), riesz_transform(f, 0),
            heat_semigroup(f, 0.01), partial_derivative(f, g.dim() - 1), product(f, u[1]),
            leray_project(u)[0], nonlinear_term(u, u)[1]};
        for (const auto& o : outs) {
            CHECK(max_imag(o) <= 1e-12 * std::max(max_real(o), 1e-300));
            CHECK(o.hermitian_defect() <= 1e-14 * std::max(o.max_abs(), 1e-300));
        }
    }
}

TEST_CASE("initial data") {
    const GridSpec g(2, 32, 2.0 * pi);
    const auto tg = make_initial_data({}, g);
    const auto p0 = to_physical(tg[0]), p1 = to_physical(tg[1]);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.coordinate(i, 0), y = g.coordinate(i, 1);
        err = std::max(err, std::abs(p0.values[i] - std::sin(x) * std::cos(y)));
        err = std::max(err, std::abs(p1.values[i] + std::cos(x) * std::sin(y)));
    }
    CHECK(err < 1e-14);

    InitialDataParams rs;
    rs.kind = InitialKind::random_slope;
    rs.amplitude = 0.0;
    CHECK(make_initial_data(rs, g).max_abs() == 0.0);
    rs.amplitude = 1.0;
    rs.seed = 42;
    const auto a = make_initial_data(rs, g), b = make_initial_data(rs, g);
    CHECK(gen::max_diff(a, b) == 0.0);
    CHECK(divergence_defect(a) <= 1e-12);
    CHECK(is_mean_zero(a));
    CHECK(std::abs(std::sqrt(inner_product(a, a) / g.volume()) - 1.0) < 1e-12);
    rs.seed = 43;
    CHECK(gen::max_diff(a, make_initial_data(rs, g)) > 0.0);

    InitialDataParams gv;
    gv.kind = InitialKind::gaussian_vortex;
    const auto v = make_initial_data(gv, GridSpec(3, 16, 2.0 * pi));
    CHECK(divergence_defect(v) <= 1e-12);
    CHECK(is_mean_zero(v));

    CHECK_THROWS_AS(parse_initial_kind("vortex_sheet"), DomainError);
    CHECK(parse_initial_kind(to_string(InitialKind::random_slope)) == InitialKind::random_slope);
}

TEST_CASE("field file round trip") {
    gen::Gen r(9);
    const auto g = GridSpec(3, 8, 1.5);
    std::vector<FieldRecord> recs;
    for (int i = 0; i < 3; ++i) {
        const auto u = r.vector(g);
        recs.push_back({0.1 * i, {u[0], u[1], u[2]}});
    }
    const auto path = std::filesystem::temp_directory_path() / "mildns_field_io_test.bin";
    write_fields(path, g, recs);
    const auto back = read_fields(path);
    CHECK(back.grid == g);
    REQUIRE(back.records.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(back.records[i].time == recs[i].time);
        for (int j = 0; j < 3; ++j) {
            CHECK(gen::max_diff(back.records[i].components[j], recs[i].components[j]) == 0.0);
        }
    }
    std::filesystem::remove(path);
}
