#include "mildns/fft.hpp"

#include "mildns/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace mildns::spectral {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (dim, N, sign) and never destroyed.
class PlanCache {
public:
    fftw_plan get(int dim, int modes, int sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_tuple(dim, modes, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        std::size_t size = 1;
        for (int a = 0; a < dim; ++a) size *= static_cast<std::size_t>(modes);
        auto* buffer = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size));
        int n[3] = {modes, modes, modes};
        fftw_plan plan = fftw_plan_dft(dim, n, buffer, buffer, sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buffer);
        if (plan == nullptr) throw Error("FFTW failed to create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

void execute(const GridSpec& grid, int sign, std::span<Complex> data) {
    fftw_plan plan = plan_cache().get(grid.dim(), grid.modes(), sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
}

void check_size(const GridSpec& grid, std::size_t n, const char* what) {
    if (n != grid.size()) {
        throw DimensionError(std::string(what) + " size " + std::to_string(n) +
                             " does not match grid size " + std::to_string(grid.size()));
    }
}

} // namespace

void forward(const GridSpec& grid, std::span<const Complex> samples, std::span<Complex> coeffs) {
    check_size(grid, samples.size(), "sample array");
    check_size(grid, coeffs.size(), "coefficient array");
    if (samples.data() != coeffs.data()) std::copy(samples.begin(), samples.end(), coeffs.begin());
    execute(grid, FFTW_FORWARD, coeffs);
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (auto& c : coeffs) c *= scale;
}

void inverse(const GridSpec& grid, std::span<const Complex> coeffs, std::span<Complex> samples) {
    check_size(grid, coeffs.size(), "coefficient array");
    check_size(grid, samples.size(), "sample array");
    if (samples.data() != coeffs.data()) std::copy(coeffs.begin(), coeffs.end(), samples.begin());
    execute(grid, FFTW_BACKWARD, samples);
}

SpectralField to_spectral(const PhysicalField& samples) {
    check_size(samples.grid, samples.values.size(), "sample array");
    std::vector<Complex> data(samples.values.begin(), samples.values.end());
    forward(samples.grid, data, data);
    return SpectralField(samples.grid, std::move(data));
}

std::vector<Complex> to_physical_complex(const SpectralField& field) {
    std::vector<Complex> data(field.coeffs().begin(), field.coeffs().end());
    inverse(field.grid(), data, data);
    return data;
}

PhysicalField to_physical(const SpectralField& field) {
    const auto data = to_physical_complex(field);
    std::vector<double> values(data.size());
    std::transform(data.begin(), data.end(), values.begin(),
                   [](const Complex& z) { return z.real(); });
    return PhysicalField(field.grid(), std::move(values));
}

} // namespace mildns::spectral
