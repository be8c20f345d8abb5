#include "mildns/errors.hpp"
#include "mildns/initial_data.hpp"
#include "mildns/verify.hpp"

#include <cmath>
#include <sstream>

namespace mildns::verify {

Family build_family(const FamilySpec& spec, int modes) {
    Family fam{GridSpec(spec.dim, modes, spec.length), {}, {}};
    const auto& g = fam.grid;
    for (int m : spec.axis_modes) {
        fam.members.push_back(spectral::cosine_mode(g, {m, 0, 0}));
        fam.labels.push_back("cos_axis_" + std::to_string(m));
    }
    if (!spec.axis_modes.empty()) {
        fam.members.push_back(spectral::cosine_mode(g, {1, 1, 0}));
        fam.labels.push_back("cos_diag_1");
    }
    for (double w : spec.gaussian_widths) {
        auto f = spectral::periodic_gaussian(g, w * spec.length * spec.length);
        f[0] = {};
        fam.members.push_back(std::move(f));
        std::ostringstream label;
        label << "gaussian_" << w;
        fam.labels.push_back(label.str());
    }
    for (double beta : spec.betas) {
        for (int k = 0; k < spec.seeds; ++k) {
            const std::uint64_t seed = spec.first_seed + static_cast<std::uint64_t>(k);
            fam.members.push_back(spectral::random_slope_scalar(g, beta, seed));
            std::ostringstream label;
            label << "slope_" << beta << "_seed_" << seed;
            fam.labels.push_back(label.str());
        }
    }
    return fam;
}

std::vector<double> geometric_times(double t_lo, double t_hi, double ratio) {
    if (!(t_lo > 0.0) || !(t_hi >= t_lo) || !(ratio > 1.0)) {
        throw DomainError("geometric times need 0 < t_lo <= t_hi and ratio > 1");
    }
    std::vector<double> out;
    for (double t = t_lo; t <= t_hi * (1.0 + 1e-12); t *= ratio) out.push_back(t);
    return out;
}

} // namespace mildns::verify
