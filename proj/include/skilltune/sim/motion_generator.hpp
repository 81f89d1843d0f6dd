#ifndef SKILLTUNE_SIM_MOTION_GENERATOR_HPP
#define SKILLTUNE_SIM_MOTION_GENERATOR_HPP

#include <cstdint>

#include "skilltune/common/geometry.hpp"
#include "skilltune/skills/motion_command.hpp"

namespace skilltune::sim {

/// Arc length of r = b*theta from 0 to theta.
double spiral_arc_length(double b, double theta);
/// Inverse of spiral_arc_length by Newton iteration.
double spiral_angle_for_length(double b, double s);

struct OverlaySample {
    Vec2 offset = Vec2::Zero();
    double angle = 0.0;
    bool finished = false;
};

/// Overlay displacement after travelling `s` metres along the overlay path.
OverlaySample overlay_at(const skills::Overlay& overlay, double s);

/// Produces the attractor pose x_d from motion commands: a linear segment
/// toward the command goal plus an optional planar search overlay.
class MotionGenerator {
public:
    MotionGenerator() = default;
    explicit MotionGenerator(const Pose& start) { reset(start); }

    void reset(const Pose& reference);
    Pose step(const skills::MotionCommand& cmd, double dt);

    const Pose& reference() const { return reference_; }
    const Pose& base() const { return base_; }
    bool segment_done() const { return segment_done_; }
    bool overlay_done() const { return overlay_done_; }
    double overlay_length() const { return overlay_s_; }

private:
    Pose base_;
    Pose reference_;
    std::uint64_t segment_ = 0;
    bool started_ = false;
    skills::Overlay overlay_;
    double overlay_s_ = 0.0;
    bool segment_done_ = false;
    bool overlay_done_ = false;
};

} // namespace skilltune::sim

#endif
