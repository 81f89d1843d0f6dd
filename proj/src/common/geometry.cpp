#include "skilltune/common/geometry.hpp"

#include <cmath>

namespace skilltune {

Pose Pose::from_array(const std::array<double, 7>& v)
{
    Pose p;
    p.position = Vec3(v[0], v[1], v[2]);
    p.orientation = Quat(v[6], v[3], v[4], v[5]);
    return p;
}

std::array<double, 7> Pose::to_array() const
{
    return {position.x(), position.y(), position.z(),
            orientation.x(), orientation.y(), orientation.z(), orientation.w()};
}

bool Pose::operator==(const Pose& other) const
{
    return position == other.position && orientation.coeffs() == other.orientation.coeffs();
}

bool is_unit(const Quat& q, double tol)
{
    return std::abs(q.norm() - 1.0) <= tol;
}

Vec3 rotation_error(const Quat& from, const Quat& to)
{
    Quat rel = from * to.conjugate();
    if (rel.w() < 0.0) {
        rel.coeffs() = -rel.coeffs();
    }
    const double s = rel.vec().norm();
    if (s < 1e-12) {
        // small-angle limit of 2 * atan2(s, w) / s
        return 2.0 * rel.vec();
    }
    const double angle = 2.0 * std::atan2(s, rel.w());
    return rel.vec() * (angle / s);
}

Vec6 pose_error(const Pose& actual, const Pose& reference)
{
    Vec6 e;
    e.head<3>() = actual.position - reference.position;
    e.tail<3>() = rotation_error(actual.orientation, reference.orientation);
    return e;
}

Quat yaw_quaternion(double yaw)
{
    return Quat(Eigen::AngleAxisd(yaw, Vec3::UnitZ()));
}

double yaw_of(const Quat& q)
{
    return std::atan2(2.0 * (q.w() * q.z() + q.x() * q.y()),
                      1.0 - 2.0 * (q.y() * q.y() + q.z() * q.z()));
}

double wrap_angle(double a)
{
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a <= 0.0) {
        a += 2.0 * kPi;
    }
    return a - kPi;
}

Quat integrate_orientation(const Quat& q, const Vec3& omega, double dt)
{
    const double angle = omega.norm() * dt;
    if (angle < 1e-15) {
        return q;
    }
    Quat dq(Eigen::AngleAxisd(angle, omega.normalized()));
    Quat out = dq * q;
    out.normalize();
    return out;
}

} // namespace skilltune
