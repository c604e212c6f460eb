#include "inertphase/field.hpp"

#include <cmath>

#include "inertphase/errors.hpp"

namespace inertphase {

FieldModel::FieldModel(PulseProfile profile, Vec3 direction)
    : profile_(profile), direction_(direction) {
    if (!is_finite(direction) || !is_unit(direction)) {
        throw ConfigError("field: direction must be a unit vector (|d| = 1 within 1e-12)");
    }
}

FieldModel FieldModel::with_amplitude(double amplitude_t) const {
    return FieldModel(profile_.with_amplitude(amplitude_t), direction_);
}

Vec3 field_at(const FieldModel& model, double t) {
    return model.profile().value(t) * model.direction();
}

Vec3 field_rate_at(const FieldModel& model, double t) {
    return model.profile().rate(t) * model.direction();
}

Vec3 field_rate_from_right(const FieldModel& model, double t) {
    return model.profile().rate_from_right(t) * model.direction();
}

Vec3 field_rate_from_left(const FieldModel& model, double t) {
    return model.profile().rate_from_left(t) * model.direction();
}

Vec3 vector_potential_at(const FieldModel& model, const Vec3& r, double t,
                         const Vec3& gauge_gradient) {
    return 0.5 * cross(field_at(model, t), r) + gauge_gradient;
}

bool is_practically_uniform(const Vec3& gradient_t_per_m, double length_scale_m,
                            double amplitude_t, double rel_tol) {
    return norm(gradient_t_per_m) * std::abs(length_scale_m) <= rel_tol * std::abs(amplitude_t);
}

}  // namespace inertphase
