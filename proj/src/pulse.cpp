#include "inertphase/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "inertphase/errors.hpp"

namespace inertphase {

namespace {

constexpr double pi = std::numbers::pi;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw ConfigError(std::string("pulse: ") + what + " must be finite");
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string("pulse: ") + what + " must be positive");
    }
}

}  // namespace

std::string_view to_string(PulseKind kind) {
    switch (kind) {
        case PulseKind::constant: return "constant";
        case PulseKind::linear_ramp: return "linear-ramp";
        case PulseKind::raised_cosine: return "raised-cosine";
        case PulseKind::smoothed_rectangle: return "smoothed-rectangle";
    }
    return "unknown";
}

PulseKind pulse_kind_from_string(std::string_view name) {
    if (name == "constant") return PulseKind::constant;
    if (name == "linear-ramp") return PulseKind::linear_ramp;
    if (name == "raised-cosine") return PulseKind::raised_cosine;
    if (name == "smoothed-rectangle") return PulseKind::smoothed_rectangle;
    throw ConfigError("unknown pulse profile '" + std::string(name) +
                      "' (expected constant, linear-ramp, raised-cosine, smoothed-rectangle)");
}

PulseProfile::PulseProfile(PulseKind kind, double amplitude, double t_on, double ramp, double flat)
    : kind_(kind), amplitude_(amplitude), t_on_(t_on), ramp_(ramp), flat_(flat) {
    require_finite(amplitude, "amplitude");
    require_finite(t_on, "t_on");
}

PulseProfile PulseProfile::constant(double amplitude_t) {
    return {PulseKind::constant, amplitude_t, 0.0, 0.0, 0.0};
}

PulseProfile PulseProfile::linear_ramp(double amplitude_t, double t_on_s, double ramp_s) {
    require_positive(ramp_s, "ramp duration");
    return {PulseKind::linear_ramp, amplitude_t, t_on_s, ramp_s, 0.0};
}

PulseProfile PulseProfile::raised_cosine(double amplitude_t, double t_on_s, double width_s) {
    require_positive(width_s, "pulse width");
    return {PulseKind::raised_cosine, amplitude_t, t_on_s, width_s, 0.0};
}

PulseProfile PulseProfile::smoothed_rectangle(double amplitude_t, double t_on_s, double ramp_s,
                                              double flat_s) {
    require_positive(ramp_s, "ramp duration");
    if (!(flat_s >= 0.0) || !std::isfinite(flat_s)) {
        throw ConfigError("pulse: flat duration must be non-negative");
    }
    return {PulseKind::smoothed_rectangle, amplitude_t, t_on_s, ramp_s, flat_s};
}

PulseProfile PulseProfile::with_amplitude(double amplitude_t) const {
    return {kind_, amplitude_t, t_on_, ramp_, flat_};
}

double PulseProfile::value(double t) const {
    const double s = t - t_on_;
    switch (kind_) {
        case PulseKind::constant:
            return amplitude_;
        case PulseKind::linear_ramp:
            if (s <= 0.0) return 0.0;
            if (s >= ramp_) return amplitude_;
            return amplitude_ * s / ramp_;
        case PulseKind::raised_cosine:
            if (s <= 0.0 || s >= ramp_) return 0.0;
            return 0.5 * amplitude_ * (1.0 - std::cos(2.0 * pi * s / ramp_));
        case PulseKind::smoothed_rectangle: {
            if (s <= 0.0) return 0.0;
            if (s < ramp_) return 0.5 * amplitude_ * (1.0 - std::cos(pi * s / ramp_));
            if (s <= ramp_ + flat_) return amplitude_;
            const double u = s - ramp_ - flat_;
            if (u < ramp_) return 0.5 * amplitude_ * (1.0 + std::cos(pi * u / ramp_));
            return 0.0;
        }
    }
    return 0.0;
}

double PulseProfile::rate(double t) const {
    const double s = t - t_on_;
    switch (kind_) {
        case PulseKind::constant:
            return 0.0;
        case PulseKind::linear_ramp:
            // Right-continuous at the kinks.
            if (s < 0.0 || s >= ramp_) return 0.0;
            return amplitude_ / ramp_;
        case PulseKind::raised_cosine:
            if (s <= 0.0 || s >= ramp_) return 0.0;
            return amplitude_ * pi / ramp_ * std::sin(2.0 * pi * s / ramp_);
        case PulseKind::smoothed_rectangle: {
            if (s <= 0.0) return 0.0;
            if (s < ramp_) return 0.5 * amplitude_ * pi / ramp_ * std::sin(pi * s / ramp_);
            if (s <= ramp_ + flat_) return 0.0;
            const double u = s - ramp_ - flat_;
            if (u < ramp_) return -0.5 * amplitude_ * pi / ramp_ * std::sin(pi * u / ramp_);
            return 0.0;
        }
    }
    return 0.0;
}

namespace {

double nudge(double t, double scale) { return 1e-12 * (std::abs(t) + scale); }

}  // namespace

double PulseProfile::rate_from_right(double t) const { return rate(t + nudge(t, ramp_ + flat_)); }

double PulseProfile::rate_from_left(double t) const { return rate(t - nudge(t, ramp_ + flat_)); }

double PulseProfile::antiderivative(double t) const {
    const double s = t - t_on_;
    switch (kind_) {
        case PulseKind::constant:
            return amplitude_ * s;
        case PulseKind::linear_ramp:
            if (s <= 0.0) return 0.0;
            if (s <= ramp_) return 0.5 * amplitude_ * s * s / ramp_;
            return amplitude_ * (0.5 * ramp_ + (s - ramp_));
        case PulseKind::raised_cosine:
            if (s <= 0.0) return 0.0;
            if (s >= ramp_) return 0.5 * amplitude_ * ramp_;
            return 0.5 * amplitude_ * (s - ramp_ / (2.0 * pi) * std::sin(2.0 * pi * s / ramp_));
        case PulseKind::smoothed_rectangle: {
            if (s <= 0.0) return 0.0;
            if (s <= ramp_) return 0.5 * amplitude_ * (s - ramp_ / pi * std::sin(pi * s / ramp_));
            const double rise_area = 0.5 * amplitude_ * ramp_;
            if (s <= ramp_ + flat_) return rise_area + amplitude_ * (s - ramp_);
            const double u = std::min(s - ramp_ - flat_, ramp_);
            return rise_area + amplitude_ * flat_ +
                   0.5 * amplitude_ * (u + ramp_ / pi * std::sin(pi * u / ramp_));
        }
    }
    return 0.0;
}

double PulseProfile::area(double t0, double t1) const { return antiderivative(t1) - antiderivative(t0); }

std::vector<double> PulseProfile::breakpoints() const {
    switch (kind_) {
        case PulseKind::constant: return {};
        case PulseKind::linear_ramp:
        case PulseKind::raised_cosine: return {t_on_, t_on_ + ramp_};
        case PulseKind::smoothed_rectangle:
            if (flat_ == 0.0) return {t_on_, t_on_ + ramp_, t_on_ + 2.0 * ramp_};
            return {t_on_, t_on_ + ramp_, t_on_ + ramp_ + flat_, t_on_ + 2.0 * ramp_ + flat_};
    }
    return {};
}

bool PulseProfile::is_c1() const noexcept {
    return kind_ == PulseKind::raised_cosine || kind_ == PulseKind::smoothed_rectangle ||
           kind_ == PulseKind::constant;
}

bool PulseProfile::returns_to_zero() const noexcept {
    return kind_ == PulseKind::raised_cosine || kind_ == PulseKind::smoothed_rectangle ||
           amplitude_ == 0.0;
}

}  // namespace inertphase
