// Command-line driver: mildns run|verify <config>, mildns plotdata <dir>.

#include "mildns/errors.hpp"
#include "mildns/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

int finish(const mildns::cli::RunResult& r) {
    std::cout << "output: " << r.output_dir.string() << '\n'
              << "failures: " << r.failures << '\n'
              << (r.exit_code == 0 ? "PASS" : "FAIL") << '\n';
    return r.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mild-solution Navier-Stokes experiments on the periodic box"};
    app.require_subcommand(1);
    int threads = 1;
    bool quiet = false;
    app.add_option("--threads", threads, "cap on worker threads (1 gives bit-reproducible output)")
        ->check(CLI::PositiveNumber);
    app.add_flag("-q,--quiet", quiet, "suppress progress messages");

    std::string config_path;
    auto* run = app.add_subcommand("run", "solve, write series, decay reports and suites");
    run->add_option("config", config_path, "configuration file")->required();
    auto* ver = app.add_subcommand("verify", "run the configured inequality suites only");
    ver->add_option("config", config_path, "configuration file")->required();
    std::string plot_dir;
    auto* plot = app.add_subcommand("plotdata", "turn norm series into plot-ready files");
    plot->add_option("dir", plot_dir, "output directory of a run")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    mildns::cli::RunOptions opts;
    opts.threads = threads;
    opts.log = quiet ? nullptr : &std::cerr;
    try {
        if (*plot) {
            const auto summary = mildns::cli::emit_plot_data(plot_dir);
            for (const auto& w : summary.warnings) std::cerr << "warning: " << w << '\n';
            for (const auto& p : summary.written) std::cout << p.string() << '\n';
            return 0;
        }
        const auto config = mildns::cli::load_config(config_path);
        if (*run) return finish(mildns::cli::run_experiment(config, opts));
        return finish(mildns::cli::run_verification(config, opts));
    } catch (const mildns::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
