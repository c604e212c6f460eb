#include "inertphase/integrators.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace inertphase {

std::string_view to_string(QuadratureMethod method) {
    return method == QuadratureMethod::simpson ? "simpson" : "trapezoid";
}

QuadratureMethod quadrature_method_from_string(std::string_view name) {
    if (name == "simpson") return QuadratureMethod::simpson;
    if (name == "trapezoid") return QuadratureMethod::trapezoid;
    throw ConfigError("unknown quadrature method '" + std::string(name) +
                      "' (expected trapezoid or simpson)");
}

int theoretical_order(QuadratureMethod method) noexcept {
    return method == QuadratureMethod::simpson ? 4 : 2;
}

void QuadratureSpec::validate() const {
    if (method == QuadratureMethod::simpson && grid.n_steps() % 2 != 0) {
        throw ConfigError("quadrature: simpson requires an even number of steps");
    }
    if (!(rel_tol > 0.0)) throw ConfigError("quadrature: tolerance must be positive");
}

namespace {

template <class Sample>
double composite(const Sample& sample, QuadratureMethod method, const TimeGrid& grid) {
    const std::size_t n = grid.n_steps();
    const double h = grid.dt();
    if (method == QuadratureMethod::trapezoid) {
        double interior = 0.0;
        for (std::size_t i = 1; i < n; ++i) interior += sample(i);
        return h * (0.5 * (sample(0) + sample(n)) + interior);
    }
    if (n % 2 != 0) throw ConfigError("quadrature: simpson requires an even number of steps");
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < n; i += 2) odd += sample(i);
    for (std::size_t i = 2; i < n; i += 2) even += sample(i);
    return h / 3.0 * (sample(0) + sample(n) + 4.0 * odd + 2.0 * even);
}

}  // namespace

double quadrature_sum(const ScalarFunction& f, QuadratureMethod method, const TimeGrid& grid) {
    return composite([&](std::size_t i) { return f(grid.time_at(i)); }, method, grid);
}

double quadrature_samples(const std::vector<double>& values, QuadratureMethod method,
                          const TimeGrid& grid) {
    if (values.size() != grid.n_nodes()) {
        throw ConfigError("quadrature: sample count does not match grid");
    }
    return composite([&](std::size_t i) { return values[i]; }, method, grid);
}

double richardson(double coarse, double fine, int order) noexcept {
    const double factor = std::ldexp(1.0, order);
    return fine + (fine - coarse) / (factor - 1.0);
}

QuadratureResult integrate_time(const ScalarFunction& f, const QuadratureSpec& spec) {
    spec.validate();
    const int p = theoretical_order(spec.method);
    const TimeGrid fine_grid = spec.grid.refined(2);
    const TimeGrid finest_grid = spec.grid.refined(4);

    const double coarse = quadrature_sum(f, spec.method, spec.grid);
    const double fine = quadrature_sum(f, spec.method, fine_grid);
    const double finest = quadrature_sum(f, spec.method, finest_grid);
    const double scale = quadrature_sum([&](double t) { return std::abs(f(t)); }, spec.method,
                                        fine_grid);

    if (!std::isfinite(coarse) || !std::isfinite(fine) || !std::isfinite(finest)) {
        throw NumericalError("integrate_time: non-finite quadrature value");
    }

    ConvergenceReport report;
    report.coarse = coarse;
    report.fine = fine;
    report.extrapolated = richardson(coarse, fine, p);
    // Error of the coarse value, assuming asymptotic behaviour.
    report.error_estimate = std::abs(fine - coarse) * std::ldexp(1.0, p) / (std::ldexp(1.0, p) - 1.0);

    const double noise = 1e3 * std::numeric_limits<double>::epsilon() * scale;
    const double d1 = std::abs(coarse - fine);
    const double d2 = std::abs(fine - finest);
    if (d1 > noise && d2 > noise) report.order = std::log2(d1 / d2);

    if (report.error_estimate > spec.rel_tol * scale + noise) {
        std::ostringstream msg;
        msg << "integrate_time: estimated error " << report.error_estimate << " exceeds tolerance "
            << spec.rel_tol << " x scale " << scale << " with " << spec.grid.n_steps()
            << " steps (coarse=" << coarse << ", fine=" << fine << ")";
        throw ConvergenceError(msg.str());
    }
    return {coarse, report};
}

std::pair<Vec3, Vec3> plane_basis(const Vec3& axis) {
    const double ax = std::abs(axis.x);
    const double ay = std::abs(axis.y);
    const double az = std::abs(axis.z);
    // Helper along the coordinate axis least aligned with `axis`; the choice
    // depends only on |components|, so e1 is unchanged when axis flips.
    Vec3 helper{1.0, 0.0, 0.0};
    if (ay <= ax && ay <= az) {
        helper = {0.0, 1.0, 0.0};
    } else if (az <= ax && az <= ay) {
        helper = {0.0, 0.0, 1.0};
    }
    Vec3 e1 = helper - dot(helper, axis) * axis;
    e1 = e1 / norm(e1);
    const Vec3 e2 = cross(axis, e1);
    return {e1, e2};
}

double loop_quadrature(const VectorField& g, double radius, const Vec3& center, const Vec3& axis,
                       std::size_t n_segments) {
    if (n_segments < 8) throw ConfigError("loop_quadrature: need at least 8 segments");
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ConfigError("loop_quadrature: radius must be positive");
    }
    if (!is_finite(axis) || !is_unit(axis)) {
        throw ConfigError("loop_quadrature: axis must be a unit vector");
    }
    const auto [e1, e2] = plane_basis(axis);
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(n_segments);
    const double dl = radius * dtheta;
    double sum = 0.0;
    for (std::size_t i = 0; i < n_segments; ++i) {
        const double theta = (static_cast<double>(i) + 0.5) * dtheta;
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Vec3 r = center + radius * (c * e1 + s * e2);
        const Vec3 tangent = -s * e1 + c * e2;
        sum += dot(g(r), tangent);
    }
    return sum * dl;
}

}  // namespace inertphase
