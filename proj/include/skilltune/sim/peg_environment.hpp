#ifndef SKILLTUNE_SIM_PEG_ENVIRONMENT_HPP
#define SKILLTUNE_SIM_PEG_ENVIRONMENT_HPP

#include "skilltune/common/geometry.hpp"
#include "skilltune/sim/contact.hpp"

namespace skilltune::sim {

/// Box with a round hole in the middle of its top face. The peg is a vertical
/// disc of radius peg_radius whose bottom centre is the end-effector point.
struct PegParams {
    double peg_radius = 0.01;
    double clearance = 0.0015;  // hole radius minus peg radius
    double hole_depth = 0.04;
    double catch_depth = 0.004; // rim chamfer: shallower pegs slide back out
    Vec3 box_size = Vec3(0.12, 0.12, 0.08);
    ContactParams contact{1e4, 100.0, 0.35};
};

struct PegEnvState {
    Pose box; // box centre
    bool in_hole = false;

    bool operator==(const PegEnvState&) const = default;
};

double surface_height(const PegParams& p, const PegEnvState& s);
Vec2 hole_center(const PegEnvState& s);

/// The disc fits the hole when its centre is within the radial clearance.
bool disc_inside_hole(const Vec2& tip_xy, const Vec2& hole_xy, double clearance);

/// Depth of the peg tip below the top face while it is in the hole, else 0.
double insertion_depth(const PegParams& p, const PegEnvState& s, const Vec3& tip);

struct PegContact {
    Vec3 force = Vec3::Zero();
    bool in_hole = false;
};

/// Contact force on the peg for one inner step. `applied` is the sum of
/// non-contact forces acting on the end effector this step.
PegContact peg_contact(const PegParams& p, const PegEnvState& s, const Vec3& tip, const Vec3& velocity,
                       const Vec3& applied, double mass, double dt);

} // namespace skilltune::sim

#endif
