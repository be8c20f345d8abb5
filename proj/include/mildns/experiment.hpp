#pragma once

#include "mildns/decay.hpp"
#include "mildns/initial_data.hpp"
#include "mildns/solver.hpp"
#include "mildns/verify.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mildns::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class SolveMethod { picard, integrate };

struct GridConfig {
    int dim = 2;
    int modes = 64;
    double length = 6.283185307179586;
};

struct DecayConfig {
    bool enabled = true;
    /// Unset bounds default to the validity window of the grid.
    std::optional<double> t_lo;
    std::optional<double> t_hi;
    double slack = 0.15;
    double trend_threshold = 0.2;
};

struct VerifyConfig {
    /// Any of: smoothing, product, riesz, embedding, besov, beta.
    std::vector<std::string> suites;
    /// Coarse resolution of the refinement pair N -> 2N.
    int modes = 64;
    int seeds = 20;
};

struct OutputConfig {
    std::string dir = "mildns_out";
    /// Every k-th mesh sample goes into the checkpoint file (the last one always).
    int checkpoint_stride = 16;
};

struct ExperimentConfig {
    GridConfig grid;
    spectral::InitialDataParams initial;
    SolveMethod method = SolveMethod::picard;
    solver::SolverConfig solver;
    std::vector<decay::ExponentSpec> norm_specs;
    DecayConfig decay;
    VerifyConfig verify;
    OutputConfig output;
};

/// Parses the INI-style configuration. Unknown sections or keys and out of
/// range values raise ConfigError naming the field path (e.g. "norms.specs[1].q").
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(to_ini(c)) reproduces c exactly.
std::string to_ini(const ExperimentConfig& config);

/// 64-bit FNV-1a of to_ini(config), as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

struct RunOptions {
    int threads = 1;
    /// Progress messages; null silences them.
    std::ostream* log = nullptr;
};

struct RunResult {
    int exit_code = 0;
    std::filesystem::path output_dir;
    bool solver_ok = true;
    std::size_t failures = 0;
};

/// Full pipeline: solve, checkpoints, norm series, decay reports, verification
/// suites and manifest. MILDNS_OUTPUT_DIR overrides output.dir. Exit code 0
/// iff every requested verdict passes, 1 otherwise.
RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Verification suites and manifest only.
RunResult run_verification(const ExperimentConfig& config, const RunOptions& options = {});

/// Default InequalityCheck set of one named suite.
std::vector<verify::InequalityCheck> run_suite(const std::string& suite, const VerifyConfig& cfg,
                                               int dim);

struct PlotSummary {
    std::vector<std::filesystem::path> written;
    std::vector<std::string> warnings;
};

/// For every series_*.csv in `dir`: plot_<stem>.dat with "log_t log_norm"
/// rows and slope_<stem>.dat with the theoretical-slope line through the
/// first sample. An empty directory yields no files and a warning.
PlotSummary emit_plot_data(const std::filesystem::path& dir);

} // namespace mildns::cli
