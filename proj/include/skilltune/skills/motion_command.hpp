#ifndef SKILLTUNE_SKILLS_MOTION_COMMAND_HPP
#define SKILLTUNE_SKILLS_MOTION_COMMAND_HPP

#include <cstdint>
#include <string>

#include "skilltune/common/geometry.hpp"

namespace skilltune::skills {

enum class OverlayKind { none, spiral, circular };

std::string to_string(OverlayKind k);
OverlayKind overlay_from_string(const std::string& s);

/// Search motion added in the world xy plane on top of the linear reference.
struct Overlay {
    OverlayKind kind = OverlayKind::none;
    double radius = 0.0;        // m
    double path_velocity = 0.0; // m/s along the overlay curve
    double pitch = 0.002;       // spiral: radial growth per revolution (m)
    double revolutions = 1.0;   // circle: revolutions; spiral: extra revolutions at full radius

    bool operator==(const Overlay&) const = default;
};

/// What a skill asks the motion generator and controller to do.
struct MotionCommand {
    Pose goal;
    double speed = 0.1; // linear path speed (m/s)
    double angular_speed = 1.0; // rad/s, used when only the orientation changes
    Vec6 stiffness = (Vec6() << 1000, 1000, 1000, 100, 100, 100).finished();
    Vec6 wrench = Vec6::Zero();
    Overlay overlay;
    /// Bumped whenever a skill starts a new segment; the generator then restarts
    /// from the current reference.
    std::uint64_t segment = 0;

    /// Throws skilltune::Error when stiffness is negative, the radius is
    /// negative, the quaternion is not unit, or a value is not finite.
    void validate() const;
    bool valid() const;
};

} // namespace skilltune::skills

#endif
