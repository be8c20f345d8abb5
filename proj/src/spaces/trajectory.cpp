#include "mildns/errors.hpp"
#include "mildns/spaces.hpp"

#include <cmath>

namespace mildns::spaces {

Trajectory::Trajectory(const GridSpec& grid, std::string config_hash)
    : grid_(grid), config_hash_(std::move(config_hash)) {}

void Trajectory::push_back(double t, VectorField u) {
    spectral::require_same_grid(grid_, u.grid());
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("trajectory times must be >= 0");
    if (!times_.empty() && !(t > times_.back())) {
        throw DomainError("trajectory times must be strictly increasing");
    }
    times_.push_back(t);
    samples_.push_back(std::move(u));
}

std::optional<std::size_t> Trajectory::index_of(double t) const {
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (std::abs(times_[i] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return i;
    }
    return std::nullopt;
}

} // namespace mildns::spaces
