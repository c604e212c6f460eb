#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "inertphase/errors.hpp"
#include "inertphase/time_grid.hpp"
#include "inertphase/vec3.hpp"

namespace inertphase {

enum class QuadratureMethod { trapezoid, simpson };

std::string_view to_string(QuadratureMethod method);
QuadratureMethod quadrature_method_from_string(std::string_view name);
int theoretical_order(QuadratureMethod method) noexcept;

struct QuadratureSpec {
    QuadratureMethod method = QuadratureMethod::simpson;
    TimeGrid grid;
    double rel_tol = 1e-9;

    // Throws ConfigError for odd Simpson grids or non-positive tolerance.
    void validate() const;
};

// Step-halving diagnostics. coarse is the value on the requested grid, fine
// the value with dt halved; order is estimated from a third level (dt / 4)
// and is empty when the differences are at roundoff level.
struct ConvergenceReport {
    double coarse = 0.0;
    double fine = 0.0;
    double extrapolated = 0.0;
    std::optional<double> order;
    double error_estimate = 0.0;
};

struct QuadratureResult {
    double value = 0.0;
    ConvergenceReport report;
};

using ScalarFunction = std::function<double(double)>;

// Single-level composite rule on the grid, no diagnostics.
double quadrature_sum(const ScalarFunction& f, QuadratureMethod method, const TimeGrid& grid);

// Composite rule applied to values already sampled on grid nodes.
double quadrature_samples(const std::vector<double>& values, QuadratureMethod method,
                          const TimeGrid& grid);

// Integral over spec.grid plus a step-halving report. Throws
// ConvergenceError when the estimated error of the returned value exceeds
// rel_tol times the integral of |f|.
QuadratureResult integrate_time(const ScalarFunction& f, const QuadratureSpec& spec);

// Richardson extrapolation of two levels of a method with the given order.
double richardson(double coarse, double fine, int order) noexcept;

template <class State>
concept OdeState = requires(State a, State b, double h) {
    { a + b } -> std::convertible_to<State>;
    { h * a } -> std::convertible_to<State>;
};

inline bool ode_state_finite(double y) { return std::isfinite(y); }

// Which side of a step a stage evaluation sits on. A right-hand side that
// accepts it as a third argument can return one-sided limits, so a forcing
// that jumps exactly on a grid node is integrated without an O(h) error.
enum class StepEdge { start, interior, end };

// Classical fixed-step RK4; returns the state at every grid node.
template <OdeState State, class Rhs>
std::vector<State> step_ode(State y0, const Rhs& rhs_in, const TimeGrid& grid) {
    const auto rhs = [&](double t, const State& y, StepEdge edge) -> State {
        if constexpr (std::is_invocable_v<const Rhs&, double, const State&, StepEdge>) {
            return rhs_in(t, y, edge);
        } else {
            (void)edge;
            return rhs_in(t, y);
        }
    };
    std::vector<State> out;
    out.reserve(grid.n_nodes());
    out.push_back(y0);
    State y = y0;
    const double h = grid.dt();
    for (std::size_t i = 0; i < grid.n_steps(); ++i) {
        const double t = grid.time_at(i);
        const State k1 = rhs(t, y, StepEdge::start);
        const State k2 = rhs(t + 0.5 * h, y + (0.5 * h) * k1, StepEdge::interior);
        const State k3 = rhs(t + 0.5 * h, y + (0.5 * h) * k2, StepEdge::interior);
        const State k4 = rhs(t + h, y + h * k3, StepEdge::end);
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!ode_state_finite(y)) {
            throw NumericalError("step_ode: non-finite state at t = " + std::to_string(t + h));
        }
        out.push_back(y);
    }
    return out;
}

using VectorField = std::function<Vec3(const Vec3&)>;

// Midpoint rule for the circulation of g around the circle of the given
// radius and center lying in the plane normal to axis, traversed
// right-handedly about axis. Each segment contributes g(r_i)·t_i a dtheta
// with r_i, t_i the exact point and tangent at the segment's midpoint angle.
double loop_quadrature(const VectorField& g, double radius, const Vec3& center, const Vec3& axis,
                       std::size_t n_segments);

// Orthonormal pair (e1, e2) with e1 x e2 = axis; e1 is even in axis.
std::pair<Vec3, Vec3> plane_basis(const Vec3& axis);

}  // namespace inertphase
