#pragma once

#include <cstddef>

namespace inertphase {

// Uniform grid on [t_start, t_end] with n_steps intervals (n_steps + 1 nodes).
class TimeGrid {
public:
    TimeGrid(double t_start, double t_end, std::size_t n_steps);

    double t_start() const noexcept { return t_start_; }
    double t_end() const noexcept { return t_end_; }
    std::size_t n_steps() const noexcept { return n_steps_; }
    std::size_t n_nodes() const noexcept { return n_steps_ + 1; }
    double dt() const noexcept { return (t_end_ - t_start_) / static_cast<double>(n_steps_); }
    double duration() const noexcept { return t_end_ - t_start_; }

    // Node i; the last node is exactly t_end.
    double time_at(std::size_t i) const noexcept;

    // Same interval, n_steps multiplied by factor (dt divided by factor).
    TimeGrid refined(std::size_t factor = 2) const;

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    double t_start_;
    double t_end_;
    std::size_t n_steps_;
};

}  // namespace inertphase
