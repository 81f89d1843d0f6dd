#include "skilltune/sim/motion_generator.hpp"

#include <algorithm>
#include <cmath>

namespace skilltune::sim {

double spiral_arc_length(double b, double theta)
{
    return 0.5 * b * (theta * std::sqrt(1.0 + theta * theta) + std::asinh(theta));
}

double spiral_angle_for_length(double b, double s)
{
    if (s <= 0.0) return 0.0;
    // For large theta, s ~ b theta^2 / 2; for small, s ~ b theta.
    double th = std::max(std::sqrt(2.0 * s / b), 1e-12);
    if (s / b < 1.0) th = std::min(th, s / b);
    for (int i = 0; i < 60; ++i) {
        const double f = spiral_arc_length(b, th) - s;
        const double df = b * std::sqrt(1.0 + th * th);
        const double next = std::max(0.0, th - f / df);
        if (std::abs(next - th) <= 1e-15 * std::max(1.0, th)) {
            th = next;
            break;
        }
        th = next;
    }
    return th;
}

OverlaySample overlay_at(const skills::Overlay& o, double s)
{
    OverlaySample out;
    const double full_turn = 2.0 * kPi;
    switch (o.kind) {
    case skills::OverlayKind::none: out.finished = true; return out;
    case skills::OverlayKind::circular: {
        if (o.radius <= 0.0) {
            out.finished = true;
            return out;
        }
        out.angle = s / o.radius;
        out.offset = o.radius * Vec2(std::cos(out.angle), std::sin(out.angle));
        out.finished = out.angle >= full_turn * o.revolutions;
        return out;
    }
    case skills::OverlayKind::spiral: {
        if (o.radius <= 0.0) {
            out.finished = true;
            return out;
        }
        const double b = o.pitch / full_turn;
        const double theta_r = o.radius / b;
        const double s_r = spiral_arc_length(b, theta_r);
        double r = 0.0;
        if (s < s_r) {
            out.angle = spiral_angle_for_length(b, s);
            r = b * out.angle;
        } else {
            out.angle = theta_r + (s - s_r) / o.radius;
            r = o.radius;
        }
        out.offset = r * Vec2(std::cos(out.angle), std::sin(out.angle));
        out.finished = out.angle >= theta_r + full_turn * o.revolutions;
        return out;
    }
    }
    return out;
}

void MotionGenerator::reset(const Pose& reference)
{
    base_ = reference;
    reference_ = reference;
    started_ = false;
    overlay_ = {};
    overlay_s_ = 0.0;
    segment_done_ = false;
    overlay_done_ = false;
}

Pose MotionGenerator::step(const skills::MotionCommand& cmd, double dt)
{
    if (!started_ || cmd.segment != segment_) {
        base_ = reference_;
        segment_ = cmd.segment;
        started_ = true;
        overlay_ = cmd.overlay;
        overlay_s_ = 0.0;
    }
    if (!(overlay_ == cmd.overlay)) {
        overlay_ = cmd.overlay;
        overlay_s_ = 0.0;
    }

    const Vec3 delta = cmd.goal.position - base_.position;
    const double dist = delta.norm();
    const double angle = base_.orientation.angularDistance(cmd.goal.orientation);
    if (dist > 0.0) {
        const double travel = std::min(dist, cmd.speed * dt);
        const double f = travel / dist;
        base_.position += f * delta;
        base_.orientation = base_.orientation.slerp(f, cmd.goal.orientation).normalized();
        if (f >= 1.0) base_.position = cmd.goal.position;
    } else if (angle > 0.0) {
        const double turn = std::min(angle, cmd.angular_speed * dt);
        base_.orientation = base_.orientation.slerp(turn / angle, cmd.goal.orientation).normalized();
    }
    if (base_.orientation.angularDistance(cmd.goal.orientation) < 1e-12) base_.orientation = cmd.goal.orientation;
    segment_done_ = base_.position == cmd.goal.position && base_.orientation.coeffs() == cmd.goal.orientation.coeffs();

    reference_ = base_;
    if (overlay_.kind == skills::OverlayKind::none) {
        overlay_done_ = true;
    } else {
        overlay_s_ += overlay_.path_velocity * dt;
        const auto sample = overlay_at(overlay_, overlay_s_);
        reference_.position.x() += sample.offset.x();
        reference_.position.y() += sample.offset.y();
        overlay_done_ = sample.finished;
    }
    return reference_;
}

} // namespace skilltune::sim
