#include "mildns/errors.hpp"
#include "mildns/experiment.hpp"
#include "mildns/field_io.hpp"
#include "mildns/format.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

namespace mildns::cli {

namespace fs = std::filesystem;

namespace {

std::string series_name(const decay::ExponentSpec& e) {
    return "series_" + decay::to_string(e.kind) + "_s" + short_number(e.s) + "_q" +
           short_number(e.q) + "_n" + std::to_string(e.n);
}

fs::path resolve_output_dir(const ExperimentConfig& c) {
    if (const char* env = std::getenv("MILDNS_OUTPUT_DIR"); env && *env) return fs::path(env);
    return fs::path(c.output.dir);
}

void say(const RunOptions& o, const std::string& msg) {
    if (o.log) *o.log << msg << '\n';
}

// Runs f(i) for i in [0, n) on up to `threads` workers. Results land in
// caller-owned slots, so the output does not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) {
                try {
                    f(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

verify::FamilySpec family_for(const VerifyConfig& cfg, int dim) {
    verify::FamilySpec f;
    f.dim = dim;
    f.seeds = cfg.seeds;
    return f;
}

verify::InequalityCheck beta_row(double gamma, double theta, verify::Half half) {
    const auto b = verify::beta_integral(gamma, theta, half);
    // int_0^{1/2} tau^-theta (1 - tau)^-gamma = B(1/2; 1 - theta, 1 - gamma)
    const double exact = half == verify::Half::lower
                             ? boost::math::beta(1.0 - theta, 1.0 - gamma, 0.5)
                             : boost::math::beta(1.0 - gamma, 1.0 - theta, 0.5);
    verify::InequalityCheck c;
    c.name = half == verify::Half::lower ? "beta_lower" : "beta_upper";
    c.params = "gamma=" + short_number(gamma) + ";theta=" + short_number(theta);
    c.sample_count = 1;
    c.worst_ratio = std::abs(b.value / exact - 1.0);
    c.fitted_C = b.value;
    c.lower_C = exact;
    c.refinement_stability = b.scaling_spread;
    c.pass = c.worst_ratio <= 1e-8 && b.scaling_spread <= 1e-8;
    return c;
}

void write_manifest(const fs::path& dir, const ExperimentConfig& c, const RunOptions& o,
                    const std::string& status, std::size_t failures) {
    std::ofstream out(dir / "manifest.txt");
    out << "# mildns run manifest\n"
        << "version = " << kVersion << '\n'
        << "config_hash = " << config_hash(c) << '\n'
        << "threads = " << o.threads << '\n'
        << "status = " << status << '\n'
        << "failures = " << failures << '\n'
        << "# configuration (re-run with: mildns run <this block saved as .ini>)\n"
        << "--- config ---\n"
        << to_ini(c);
}

std::size_t run_suites(const ExperimentConfig& c, const fs::path& dir, const RunOptions& o) {
    std::ofstream out(dir / "inequality_checks.csv");
    verify::write_check_header(out);
    std::size_t failures = 0;
    for (const auto& suite : c.verify.suites) {
        say(o, "suite " + suite);
        for (const auto& check : run_suite(suite, c.verify, c.grid.dim)) {
            verify::write_check_row(out, check);
            if (!check.pass) ++failures;
        }
    }
    return failures;
}

} // namespace

std::vector<verify::InequalityCheck> run_suite(const std::string& suite, const VerifyConfig& cfg,
                                               int dim) {
    const auto fam = family_for(cfg, dim);
    const int n = cfg.modes;
    std::vector<verify::InequalityCheck> out;
    if (suite == "smoothing") {
        const auto times = verify::geometric_times(1e-3, 1.0, 2.0);
        for (auto [p, q, s] : {std::tuple{2.0, 2.0, 0.0}, {2.0, 4.0, 0.0}, {2.0, 2.0, 1.0},
                               {2.0, 4.0, 1.0}, {4.0, 4.0, 0.0}}) {
            out.push_back(verify::check_smoothing(fam, n, p, q, s, times));
        }
    } else if (suite == "product") {
        for (double s : {0.5, 1.0}) {
            out.push_back(verify::check_product(fam, n, {2.0, 4.0, 4.0, 4.0, 4.0}, s));
            out.push_back(verify::check_product(fam, n, {2.0, 3.0, 6.0, 6.0, 3.0}, s));
        }
    } else if (suite == "riesz") {
        for (double q : {2.0, 4.0, 1.5}) out.push_back(verify::check_riesz_bound(fam, n, q));
    } else if (suite == "embedding") {
        for (auto [s1, q1, q2] : {std::tuple{1.0, 2.0, 4.0}, {0.5, 2.0, 4.0}, {1.0, 2.0, 8.0}}) {
            const double s2 = s1 - dim * (1.0 / q1 - 1.0 / q2);
            out.push_back(verify::check_embedding(fam, n, s1, q1, s2, q2));
        }
    } else if (suite == "besov") {
        for (auto [s, q] : {std::pair{-0.5, 4.0}, {-0.25, 2.0}, {-0.5, 2.0}}) {
            out.push_back(verify::check_besov_equivalence(fam, n, s, q));
        }
    } else if (suite == "beta") {
        for (auto [g, t] : {std::pair{0.5, 0.5}, {0.25, 0.75}, {0.9, 0.1}, {-0.5, 0.5},
                            {0.3, -0.2}}) {
            out.push_back(beta_row(g, t, verify::Half::lower));
            out.push_back(beta_row(g, t, verify::Half::upper));
        }
    } else {
        throw ConfigError("verify.suites", "unknown suite '" + suite + "'");
    }
    return out;
}

RunResult run_verification(const ExperimentConfig& c, const RunOptions& o) {
    RunResult r;
    r.output_dir = resolve_output_dir(c);
    fs::create_directories(r.output_dir);
    r.failures = run_suites(c, r.output_dir, o);
    r.exit_code = r.failures == 0 ? 0 : 1;
    write_manifest(r.output_dir, c, o, r.failures == 0 ? "pass" : "fail", r.failures);
    return r;
}

RunResult run_experiment(const ExperimentConfig& c, const RunOptions& o) {
    RunResult r;
    r.output_dir = resolve_output_dir(c);
    fs::create_directories(r.output_dir);
    const fs::path dir = r.output_dir;
    const std::string hash = config_hash(c);

    const spectral::GridSpec grid(c.grid.dim, c.grid.modes, c.grid.length);
    const auto u0 = spectral::make_initial_data(c.initial, grid);

    std::optional<spaces::Trajectory> traj;
    std::string solver_status = "ok";
    {
        std::ofstream log(dir / "solver.log");
        try {
            if (c.method == SolveMethod::picard) {
                auto res = solver::picard_solve(u0, c.solver, &log);
                log << "picard converged iterations=" << res.estimate.iterations
                    << " final_residual=" << format_double(res.estimate.final_residual)
                    << " eta_hat=" << format_double(res.estimate.eta_hat)
                    << " y_norm=" << format_double(res.estimate.y_norm) << '\n';
                traj = std::move(res.trajectory);
            } else {
                traj = solver::integrate(u0, c.solver);
            }
        } catch (const solver::SmallnessViolated& e) {
            solver_status = "smallness_violated";
            log << "smallness violated: " << e.what() << '\n';
        } catch (const solver::NotConvergedError& e) {
            solver_status = "not_converged";
            log << "not converged: " << e.what() << '\n';
        } catch (const BlowUpError& e) {
            solver_status = "blow_up";
            log << "blow up at t=" << format_double(e.last_valid_time()) << ": " << e.what() << '\n';
        }
    }
    say(o, "solver " + solver_status);
    std::size_t failures = 0;

    if (traj) {
        traj->set_config_hash(hash);
        std::vector<spectral::FieldRecord> records;
        const auto stride = static_cast<std::size_t>(c.output.checkpoint_stride);
        for (std::size_t i = 0; i < traj->size(); ++i) {
            if (i % stride != 0 && i + 1 != traj->size()) continue;
            const auto& u = (*traj)[i];
            spectral::FieldRecord rec{traj->time(i), {}};
            for (int j = 0; j < u.dim(); ++j) rec.components.push_back(u[j]);
            records.push_back(std::move(rec));
        }
        spectral::write_fields(dir / "checkpoints.bin", grid, records);

        const auto& specs = c.norm_specs;
        std::vector<std::vector<spaces::NormSample>> series(specs.size());
        parallel_for(specs.size(), o.threads, [&](std::size_t i) {
            series[i] = decay::quantity_series(*traj, specs[i], c.solver.max_derivative_order);
        });
        for (std::size_t i = 0; i < specs.size(); ++i) {
            spaces::SeriesInfo info{c.grid.dim, decay::to_string(specs[i].kind), specs[i].s,
                                    specs[i].q, specs[i].n,
                                    decay::theoretical_exponent(specs[i], c.grid.dim)};
            std::ofstream out(dir / (series_name(specs[i]) + ".csv"));
            spaces::write_series_csv(out, info, series[i]);
        }

        if (c.decay.enabled) {
            std::ofstream rep(dir / "decay_reports.txt");
            std::vector<decay::DecayReport> reports;
            const auto valid = decay::validity_window(grid);
            const decay::FitWindow window{std::max(c.decay.t_lo.value_or(valid.t_lo), valid.t_lo),
                                          std::min(c.decay.t_hi.value_or(valid.t_hi), valid.t_hi)};
            const decay::ReportOptions opts{c.decay.slack, c.decay.trend_threshold,
                                            c.solver.max_derivative_order};
            for (std::size_t i = 0; i < specs.size(); ++i) {
                try {
                    if (!(window.t_lo < window.t_hi)) {
                        throw DomainError("requested window lies outside the validity window");
                    }
                    auto report =
                        decay::decay_report_from_series(series[i], specs[i], c.grid.dim, window, opts);
                    decay::write_report_record(rep, report);
                    if (!report.pass) ++failures;
                    reports.push_back(report);
                } catch (const Error& e) {
                    rep << "[decay_report]\n"
                        << "series = " << series_name(specs[i]) << '\n'
                        << "refused = " << e.what() << '\n'
                        << "verdict = FAIL\n\n";
                    ++failures;
                }
            }
            std::ofstream table(dir / "exponents.csv");
            decay::write_exponent_table(table, reports);
        }
    } else {
        ++failures;
    }

    failures += run_suites(c, dir, o);
    r.solver_ok = solver_status == "ok";
    r.failures = failures;
    r.exit_code = failures == 0 ? 0 : 1;
    write_manifest(dir, c, o, r.solver_ok ? (failures == 0 ? "pass" : "fail") : solver_status,
                   failures);
    return r;
}

} // namespace mildns::cli
