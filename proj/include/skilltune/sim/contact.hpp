#ifndef SKILLTUNE_SIM_CONTACT_HPP
#define SKILLTUNE_SIM_CONTACT_HPP

#include "skilltune/common/geometry.hpp"

namespace skilltune::sim {

struct ContactParams {
    double stiffness = 1e4; // N/m
    double damping = 100.0; // Ns/m
    double friction = 0.4;  // Coulomb coefficient
};

/// max(0, k*pen + c*pen_rate); zero when not penetrating.
double normal_force(double penetration, double penetration_rate, const ContactParams& p);

/// Coulomb friction from the tangential force that would stop sliding this
/// step: returned as is inside the cone, scaled onto its boundary outside.
Vec3 coulomb_friction(const Vec3& stick_force, double normal, double mu);

struct ContactForce {
    Vec3 force = Vec3::Zero(); // on the body, world frame
    double normal = 0.0;
    bool sliding = false;
};

/// Penalty contact of a body point against a surface with unit normal `n`
/// pointing out of the surface. `velocity` is the body velocity relative to
/// the surface; `stick_force` is the tangential force that would cancel the
/// tangential velocity within the step.
ContactForce contact_force(double penetration, const Vec3& n, const Vec3& velocity, const Vec3& stick_force,
                           const ContactParams& p);

/// Force needed to bring tangential velocity to zero in one step, given the
/// other tangential forces already acting.
Vec3 stick_force(const Vec3& n, const Vec3& velocity, const Vec3& applied, double mass, double dt);

} // namespace skilltune::sim

#endif
