#include "skilltune/sim/push_environment.hpp"

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "skilltune/common/error.hpp"

namespace skilltune::sim {

namespace {

double cross(const Vec2& a, const Vec2& b)
{
    return a.x() * b.y() - a.y() * b.x();
}

Vec2 perp(const Vec2& r)
{
    return {-r.y(), r.x()};
}

} // namespace

double PushParams::inertia() const
{
    return mass * radius_of_gyration_sq(shape);
}

Polygon right_triangle(double leg_x, double leg_y)
{
    Polygon t = {{0.0, 0.0}, {leg_x, 0.0}, {0.0, leg_y}};
    const Vec2 c = centroid(t);
    for (auto& v : t) v -= c;
    return t;
}

Pose object_pose(const PushParams& p, const PushEnvState& s)
{
    Pose out;
    out.position = Vec3(s.position.x(), s.position.y(), p.height / 2.0);
    out.orientation = yaw_quaternion(s.yaw);
    return out;
}

Polygon object_footprint(const PushParams& p, const PushEnvState& s)
{
    return transformed(p.shape, s.position, s.yaw);
}

Polygon pusher_footprint(const PushParams& p, const Pose& ee)
{
    return transformed(square(p.pusher_side), ee.position.head<2>(), yaw_of(ee.orientation));
}

PushEnvState integrate_object(const PushParams& p, const PushEnvState& s, const Vec2& force, double torque, double dt)
{
    if (p.shape.size() != 3) throw Error("push object footprint must be a triangle");
    const Eigen::Rotation2Dd R(s.yaw);
    const Vec2 com = s.position + R * p.com_offset;
    const double I = p.inertia();

    Vec2 v = s.velocity + force / p.mass * dt;
    double w = s.omega + torque / I * dt;

    const Polygon world = object_footprint(p, s);
    const Vec3 load = barycentric(world[0], world[1], world[2], com);
    std::array<Vec2, 3> r;
    std::array<double, 3> limit;
    std::array<Eigen::Matrix2d, 3> inv_mass;
    for (int i = 0; i < 3; ++i) {
        r[i] = world[i] - com;
        limit[i] = p.ground_friction * std::max(0.0, load[i]) * p.mass * p.gravity * dt;
        const Vec2 q = perp(r[i]);
        Eigen::Matrix2d K = Eigen::Matrix2d::Identity() / p.mass + q * q.transpose() / I;
        inv_mass[i] = K.inverse();
    }
    std::array<Vec2, 3> acc = {Vec2::Zero(), Vec2::Zero(), Vec2::Zero()};
    for (int it = 0; it < p.friction_iterations; ++it) {
        for (int i = 0; i < 3; ++i) {
            const Vec2 u = v + w * perp(r[i]);
            Vec2 next = acc[i] - inv_mass[i] * u;
            const double n = next.norm();
            if (n > limit[i]) next *= limit[i] / n;
            const Vec2 d = next - acc[i];
            acc[i] = next;
            v += d / p.mass;
            w += cross(r[i], d) / I;
        }
    }

    PushEnvState out;
    out.velocity = v;
    out.omega = w;
    out.yaw = wrap_angle(s.yaw + w * dt);
    const Vec2 com_next = com + v * dt;
    out.position = com_next - Eigen::Rotation2Dd(out.yaw) * p.com_offset;
    return out;
}

PushContact push_step(const PushParams& p, const PushEnvState& s, const Pose& ee, const Vec6& ee_twist, double dt)
{
    PushContact out;
    Vec2 f_obj = Vec2::Zero();
    double tau_obj = 0.0;
    const Vec2 com = s.position + Eigen::Rotation2Dd(s.yaw) * p.com_offset;
    const bool at_height = ee.position.z() - p.pusher_height / 2.0 < p.height;
    if (at_height) {
        const Polygon obj = object_footprint(p, s);
        const Polygon pusher = pusher_footprint(p, ee);
        const Vec2 ee_xy = ee.position.head<2>();
        const Vec2 ee_v = ee_twist.head<2>();
        const double ee_w = ee_twist[5];
        for (const auto& pen : penetrations(pusher, obj)) {
            const Vec2 v_push = ee_v + ee_w * perp(pen.point - ee_xy);
            const Vec2 v_obj = s.velocity + s.omega * perp(pen.point - com);
            const Vec2 rel = v_push - v_obj;
            const double fn = normal_force(pen.depth, rel.dot(pen.direction), p.contact);
            if (fn <= 0.0) continue;
            const Vec2 slip = -rel - (-rel).dot(pen.direction) * pen.direction;
            const double eps = 1e-3;
            const Vec2 ft = -p.pusher_friction * fn * slip / std::sqrt(slip.squaredNorm() + eps * eps);
            const Vec2 f = fn * pen.direction + ft;
            f_obj += f;
            tau_obj += cross(pen.point - com, f);
            out.force.head<2>() -= f;
            out.torque.z() -= cross(pen.point - ee_xy, f);
        }
    }
    out.next = integrate_object(p, s, f_obj, tau_obj, dt);
    return out;
}

} // namespace skilltune::sim
