#include "skilltune/sim/peg_environment.hpp"

#include <algorithm>

namespace skilltune::sim {

double surface_height(const PegParams& p, const PegEnvState& s)
{
    return s.box.position.z() + p.box_size.z() / 2.0;
}

Vec2 hole_center(const PegEnvState& s)
{
    return s.box.position.head<2>();
}

bool disc_inside_hole(const Vec2& tip_xy, const Vec2& hole_xy, double clearance)
{
    return (tip_xy - hole_xy).norm() <= clearance;
}

double insertion_depth(const PegParams& p, const PegEnvState& s, const Vec3& tip)
{
    if (!s.in_hole) return 0.0;
    return std::max(0.0, surface_height(p, s) - tip.z());
}

PegContact peg_contact(const PegParams& p, const PegEnvState& s, const Vec3& tip, const Vec3& velocity,
                       const Vec3& applied, double mass, double dt)
{
    PegContact out;
    const double top = surface_height(p, s);
    const Vec2 h = hole_center(s);
    const Vec2 rel = tip.head<2>() - h;
    const double e = rel.norm();
    const double depth = top - tip.z();
    const bool inside = disc_inside_hole(tip.head<2>(), h, p.clearance);

    bool in_hole = s.in_hole;
    if (!in_hole && depth > 0.0 && inside) in_hole = true;
    if (in_hole && (depth <= 0.0 || (!inside && depth < p.catch_depth))) in_hole = false;
    out.in_hole = in_hole;

    if (!in_hole) {
        if (depth > 0.0) {
            const Vec3 n = Vec3::UnitZ();
            const auto c = contact_force(depth, n, velocity, stick_force(n, velocity, applied, mass, dt), p.contact);
            out.force = c.force;
        }
        return out;
    }

    double wall = 0.0;
    if (e > p.clearance) {
        const Vec2 outward = rel / e;
        const double radial_rate = velocity.head<2>().dot(outward);
        wall = normal_force(e - p.clearance, radial_rate, p.contact);
        out.force.head<2>() -= wall * outward;
    }
    double bottom = 0.0;
    if (depth > p.hole_depth) {
        bottom = normal_force(depth - p.hole_depth, -velocity.z(), p.contact);
        out.force.z() += bottom;
    }
    const Vec3 total = applied + out.force;
    if (wall > 0.0) {
        const double stick_z = -(mass * velocity.z() / dt + total.z());
        out.force.z() += std::clamp(stick_z, -p.contact.friction * wall, p.contact.friction * wall);
    }
    if (bottom > 0.0) {
        Vec3 stick = -(mass * velocity / dt + total);
        stick.z() = 0.0;
        out.force += coulomb_friction(stick, bottom, p.contact.friction);
    }
    return out;
}

} // namespace skilltune::sim
