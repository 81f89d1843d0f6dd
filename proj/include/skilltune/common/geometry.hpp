#ifndef SKILLTUNE_COMMON_GEOMETRY_HPP
#define SKILLTUNE_COMMON_GEOMETRY_HPP

#include <array>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace skilltune {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Quat = Eigen::Quaterniond;

/// Position in metres plus a unit quaternion.
struct Pose {
    Vec3 position = Vec3::Zero();
    Quat orientation = Quat::Identity();

    static Pose from_array(const std::array<double, 7>& v); // x y z qx qy qz qw
    std::array<double, 7> to_array() const;

    bool operator==(const Pose& other) const;
};

/// Quaternion norm within 1e-9 of one.
bool is_unit(const Quat& q, double tol = 1e-9);

/// Axis-angle vector of the rotation taking `to` onto `from` (i.e. of from * to^-1),
/// angle in [0, pi].
Vec3 rotation_error(const Quat& from, const Quat& to);

/// Stacked [position; axis-angle] error of `actual` relative to `reference`.
Vec6 pose_error(const Pose& actual, const Pose& reference);

/// Rotation about world z.
Quat yaw_quaternion(double yaw);
double yaw_of(const Quat& q);

/// Wrap to (-pi, pi].
double wrap_angle(double a);

/// Integrates a body orientation by a world-frame angular velocity over dt.
Quat integrate_orientation(const Quat& q, const Vec3& omega, double dt);

constexpr double kPi = 3.14159265358979323846;
constexpr double deg2rad(double d) { return d * kPi / 180.0; }
constexpr double rad2deg(double r) { return r * 180.0 / kPi; }

} // namespace skilltune

#endif
