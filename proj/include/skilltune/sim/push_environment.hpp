#ifndef SKILLTUNE_SIM_PUSH_ENVIRONMENT_HPP
#define SKILLTUNE_SIM_PUSH_ENVIRONMENT_HPP

#include "skilltune/common/geometry.hpp"
#include "skilltune/sim/contact.hpp"
#include "skilltune/sim/polygon.hpp"

namespace skilltune::sim {

/// Planar prism resting on the table on the three corners of its triangular
/// footprint; the load on each corner follows the centre of mass.
struct PushParams {
    Polygon shape;                  // footprint around the geometric centre, counter-clockwise
    Vec2 com_offset = Vec2::Zero(); // centre of mass relative to the geometric centre, object frame
    double mass = 2.5;
    double height = 0.07;
    double ground_friction = 0.4;
    double gravity = 9.81;
    double pusher_side = 0.07;
    double pusher_height = 0.05;
    double pusher_friction = 0.3;
    ContactParams contact{1e4, 100.0, 0.4};
    int friction_iterations = 30;

    double inertia() const;
};

/// Right triangle with legs along the object x and y axes, centred on its centroid.
Polygon right_triangle(double leg_x, double leg_y);

struct PushEnvState {
    Vec2 position = Vec2::Zero(); // geometric centre
    double yaw = 0.0;
    Vec2 velocity = Vec2::Zero(); // of the centre of mass
    double omega = 0.0;

    bool operator==(const PushEnvState&) const = default;
};

Pose object_pose(const PushParams& p, const PushEnvState& s);
Polygon object_footprint(const PushParams& p, const PushEnvState& s);
Polygon pusher_footprint(const PushParams& p, const Pose& ee);

struct PushContact {
    Vec3 force = Vec3::Zero();  // on the pusher
    Vec3 torque = Vec3::Zero(); // on the pusher, about the end-effector point
    PushEnvState next;
};

/// One inner step: pusher/object penalty contact, then object motion with
/// ground friction solved per corner by sequential impulses.
PushContact push_step(const PushParams& p, const PushEnvState& s, const Pose& ee, const Vec6& ee_twist, double dt);

/// Object-only update under an external planar force and torque about the COM.
PushEnvState integrate_object(const PushParams& p, const PushEnvState& s, const Vec2& force, double torque,
                              double dt);

} // namespace skilltune::sim

#endif
