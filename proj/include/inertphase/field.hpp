#pragma once

#include "inertphase/pulse.hpp"
#include "inertphase/vec3.hpp"

namespace inertphase {

// Spatially uniform field B(r, t) = profile(t) * direction.
class FieldModel {
public:
    explicit FieldModel(PulseProfile profile, Vec3 direction = unit_z);

    const PulseProfile& profile() const noexcept { return profile_; }
    const Vec3& direction() const noexcept { return direction_; }

    FieldModel with_amplitude(double amplitude_t) const;

private:
    PulseProfile profile_;
    Vec3 direction_;
};

Vec3 field_at(const FieldModel& model, double t);
Vec3 field_rate_at(const FieldModel& model, double t);
Vec3 field_rate_from_right(const FieldModel& model, double t);
Vec3 field_rate_from_left(const FieldModel& model, double t);

// Symmetric gauge A = B x r / 2, optionally shifted by a constant gauge
// gradient (A + grad chi with chi = gauge_gradient · r).
Vec3 vector_potential_at(const FieldModel& model, const Vec3& r, double t,
                         const Vec3& gauge_gradient = {});

// "Practically uniform" premise: a requested linear gradient is acceptable
// when it changes |B| by at most rel_tol * |B_max| across length_scale_m.
bool is_practically_uniform(const Vec3& gradient_t_per_m, double length_scale_m,
                            double amplitude_t, double rel_tol);

}  // namespace inertphase
