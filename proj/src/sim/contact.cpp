#include "skilltune/sim/contact.hpp"

#include <algorithm>

namespace skilltune::sim {

double normal_force(double penetration, double penetration_rate, const ContactParams& p)
{
    if (penetration <= 0.0) return 0.0;
    return std::max(0.0, p.stiffness * penetration + p.damping * penetration_rate);
}

Vec3 coulomb_friction(const Vec3& stick, double normal, double mu)
{
    const double limit = mu * normal;
    const double mag = stick.norm();
    if (mag <= limit) return stick;
    return stick * (limit / mag);
}

ContactForce contact_force(double penetration, const Vec3& n, const Vec3& velocity, const Vec3& stick,
                           const ContactParams& p)
{
    ContactForce out;
    if (penetration <= 0.0) return out;
    out.normal = normal_force(penetration, -velocity.dot(n), p);
    const Vec3 tangential_stick = stick - stick.dot(n) * n;
    const Vec3 f = coulomb_friction(tangential_stick, out.normal, p.friction);
    out.sliding = tangential_stick.norm() > p.friction * out.normal;
    out.force = out.normal * n + f;
    return out;
}

Vec3 stick_force(const Vec3& n, const Vec3& velocity, const Vec3& applied, double mass, double dt)
{
    const Vec3 v_t = velocity - velocity.dot(n) * n;
    const Vec3 a_t = applied - applied.dot(n) * n;
    return -(mass * v_t / dt + a_t);
}

} // namespace skilltune::sim
