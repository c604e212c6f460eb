#pragma once

#include "inertphase/field.hpp"
#include "inertphase/integrators.hpp"
#include "inertphase/neutron.hpp"
#include "inertphase/ring.hpp"

namespace inertphase {

struct CompareOptions {
    // Classical verdict: |dS_classical| < invariance_tol * |S_classical|.
    double invariance_tol = 1e-6;
    // Quantum verdict: |dS_quantum| / hbar above this phase (radians).
    double phase_resolution_rad = 1e-6;
    EvolveOptions evolve;
};

// Quantum neutron against the classical current loop carrying the same
// moment, both run through the same field and grid. The "off" runs use the
// same profile at zero amplitude.
struct ComparisonReport {
    PathResult neutron_on;
    PathResult neutron_off;
    RingRunResult ring_on;
    RingRunResult ring_off;

    double pulse_area = 0.0;  // closed form, T·s
    double delta_s_quantum = 0.0;
    double phase_shift = 0.0;
    double s_classical = 0.0;
    double delta_s_classical = 0.0;

    bool quantum_depends = false;
    bool classical_invariant = false;
};

// Throws ConfigError unless ring_moment(ring) equals neutron.moment within
// 1e-9 relative.
ComparisonReport compare_quantum_classical(const NeutronState& neutron, const RingDevice& ring,
                                           const FieldModel& field, const QuadratureSpec& spec,
                                           const CompareOptions& options = {});

// Current that gives a ring of the given radius the neutron's moment
// (requires the ring axis to be +/- the moment direction).
double matched_ring_current(const NeutronState& neutron, double radius_m, const Vec3& axis);

}  // namespace inertphase
