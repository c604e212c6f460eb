#include "inertphase/time_grid.hpp"

#include <cmath>
#include <string>

#include "inertphase/errors.hpp"

namespace inertphase {

TimeGrid::TimeGrid(double t_start, double t_end, std::size_t n_steps)
    : t_start_(t_start), t_end_(t_end), n_steps_(n_steps) {
    if (!std::isfinite(t_start) || !std::isfinite(t_end)) {
        throw ConfigError("time grid: bounds must be finite");
    }
    if (!(t_end > t_start)) {
        throw ConfigError("time grid: t_end must exceed t_start");
    }
    if (n_steps < 2) {
        throw ConfigError("time grid: n_steps must be at least 2, got " + std::to_string(n_steps));
    }
}

double TimeGrid::time_at(std::size_t i) const noexcept {
    if (i >= n_steps_) return t_end_;
    return t_start_ + static_cast<double>(i) * dt();
}

TimeGrid TimeGrid::refined(std::size_t factor) const {
    return TimeGrid(t_start_, t_end_, n_steps_ * factor);
}

}  // namespace inertphase
