#include "mildns/errors.hpp"
#include "mildns/experiment.hpp"
#include "mildns/format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace mildns::cli {

namespace fs = std::filesystem;

PlotSummary emit_plot_data(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw DomainError("not a directory: " + dir.string());
    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.rfind("series_", 0) == 0 &&
            entry.path().extension() == ".csv") {
            inputs.push_back(entry.path());
        }
    }
    std::sort(inputs.begin(), inputs.end());
    PlotSummary summary;
    if (inputs.empty()) {
        summary.warnings.push_back("no norm series found in " + dir.string());
        return summary;
    }
    for (const auto& path : inputs) {
        std::ifstream in(path);
        const auto file = spaces::read_series_csv(in);
        const auto stem = path.stem().string();
        std::vector<std::pair<double, double>> pts;
        for (const auto& s : file.samples) {
            if (s.t > 0.0 && s.raw > 0.0) pts.emplace_back(std::log(s.t), std::log(s.raw));
        }
        if (pts.empty()) {
            summary.warnings.push_back(stem + ": no positive samples");
            continue;
        }
        const auto plot = dir / ("plot_" + stem + ".dat");
        {
            std::ofstream out(plot);
            out << "# log_t log_norm\n";
            for (const auto& [x, y] : pts) out << format_double(x) << ' ' << format_double(y) << '\n';
        }
        const auto slope = dir / ("slope_" + stem + ".dat");
        {
            std::ofstream out(slope);
            const double theta = file.info.exponent;
            out << "# log_t log_norm  slope " << format_double(-theta) << '\n';
            const auto& [x0, y0] = pts.front();
            const double x1 = pts.back().first;
            out << format_double(x0) << ' ' << format_double(y0) << '\n'
                << format_double(x1) << ' ' << format_double(y0 - theta * (x1 - x0)) << '\n';
        }
        summary.written.push_back(plot);
        summary.written.push_back(slope);
    }
    return summary;
}

} // namespace mildns::cli
