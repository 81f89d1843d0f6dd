#include "skilltune/skills/motion_command.hpp"

#include <cmath>

#include "skilltune/common/error.hpp"

namespace skilltune::skills {

std::string to_string(OverlayKind k)
{
    switch (k) {
    case OverlayKind::none: return "none";
    case OverlayKind::spiral: return "spiral";
    case OverlayKind::circular: return "circular";
    }
    return "?";
}

OverlayKind overlay_from_string(const std::string& s)
{
    if (s == "none") return OverlayKind::none;
    if (s == "spiral" || s == "archimedes-spiral") return OverlayKind::spiral;
    if (s == "circular" || s == "circle") return OverlayKind::circular;
    throw ConfigError("unknown overlay '" + s + "'");
}

void MotionCommand::validate() const
{
    if (!goal.position.allFinite() || !goal.orientation.coeffs().allFinite()) {
        throw Error("motion command goal is not finite");
    }
    if (!is_unit(goal.orientation, 1e-6)) throw Error("motion command goal quaternion is not unit");
    if (!stiffness.allFinite() || (stiffness.array() < 0.0).any()) {
        throw Error("motion command stiffness must be finite and non-negative");
    }
    if (!wrench.allFinite()) throw Error("motion command wrench is not finite");
    if (!std::isfinite(speed) || speed < 0.0 || !std::isfinite(angular_speed) || angular_speed < 0.0) {
        throw Error("motion command speed must be finite and non-negative");
    }
    if (!std::isfinite(overlay.radius) || overlay.radius < 0.0) throw Error("overlay radius must be >= 0");
    if (!std::isfinite(overlay.path_velocity) || overlay.path_velocity < 0.0) {
        throw Error("overlay path velocity must be >= 0");
    }
    if (overlay.kind == OverlayKind::spiral && !(overlay.pitch > 0.0)) throw Error("spiral pitch must be > 0");
    if (!(overlay.revolutions >= 0.0)) throw Error("overlay revolutions must be >= 0");
}

bool MotionCommand::valid() const
{
    try {
        validate();
        return true;
    } catch (const Error&) {
        return false;
    }
}

} // namespace skilltune::skills
