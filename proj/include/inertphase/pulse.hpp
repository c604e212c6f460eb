#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace inertphase {

enum class PulseKind { constant, linear_ramp, raised_cosine, smoothed_rectangle };

std::string_view to_string(PulseKind kind);
PulseKind pulse_kind_from_string(std::string_view name);

// Scalar time profile B(t) of a uniform field, in tesla.
//
//   constant            B(t) = B_max
//   linear_ramp         0 before t_on, rises linearly over ramp_s, holds B_max
//   raised_cosine       B_max (1 - cos(2 pi s / width)) / 2 on [t_on, t_on + width], 0 elsewhere
//   smoothed_rectangle  half-cosine rise over ramp_s, flat for flat_s,
//                       half-cosine fall over ramp_s, 0 elsewhere
//
// raised_cosine and smoothed_rectangle are C1; linear_ramp is only C0.
class PulseProfile {
public:
    static PulseProfile constant(double amplitude_t);
    static PulseProfile linear_ramp(double amplitude_t, double t_on_s, double ramp_s);
    static PulseProfile raised_cosine(double amplitude_t, double t_on_s, double width_s);
    static PulseProfile smoothed_rectangle(double amplitude_t, double t_on_s, double ramp_s,
                                           double flat_s);

    PulseKind kind() const noexcept { return kind_; }
    double amplitude() const noexcept { return amplitude_; }
    double t_on() const noexcept { return t_on_; }
    // Ramp length for linear_ramp / smoothed_rectangle, full width for raised_cosine.
    double ramp() const noexcept { return ramp_; }
    double flat() const noexcept { return flat_; }

    double value(double t) const;
    double rate(double t) const;
    // One-sided limits of rate(); they differ from rate() only at the kinks
    // of linear_ramp. A few-ulp nudge absorbs grid nodes that miss a
    // breakpoint by rounding.
    double rate_from_right(double t) const;
    double rate_from_left(double t) const;

    // Exact integral of value() over [t0, t1].
    double area(double t0, double t1) const;

    // Times where the profile switches formula (value or derivative may kink there).
    std::vector<double> breakpoints() const;

    bool is_c1() const noexcept;
    // True when the profile is identically zero from the last breakpoint on.
    bool returns_to_zero() const noexcept;

    PulseProfile with_amplitude(double amplitude_t) const;

    friend bool operator==(const PulseProfile&, const PulseProfile&) = default;

private:
    PulseProfile(PulseKind kind, double amplitude, double t_on, double ramp, double flat);

    double antiderivative(double t) const;

    PulseKind kind_;
    double amplitude_;
    double t_on_;
    double ramp_;
    double flat_;
};

}  // namespace inertphase
