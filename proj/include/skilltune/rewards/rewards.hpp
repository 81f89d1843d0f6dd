#ifndef SKILLTUNE_REWARDS_REWARDS_HPP
#define SKILLTUNE_REWARDS_REWARDS_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "skilltune/common/error.hpp"
#include "skilltune/common/geometry.hpp"
#include "skilltune/common/sense.hpp"

namespace skilltune::rewards {

enum class RewardKind {
    task_completion,
    ee_box_distance,
    applied_wrench,
    ee_goal_distance,
    ee_reference_distance,
    object_pose_divergence,
};

std::string to_string(RewardKind k);
RewardKind reward_kind_from_string(const std::string& s);

enum class DivergenceMetric { translation, rotation, pose };

struct RewardSpec {
    RewardKind kind = RewardKind::task_completion;
    std::string objective;
    double weight = 1.0;
    double sigma = 1.0;  // width of the exponential rewards
    double offset = 0.0; // d_o
    double fixed = 1.0;  // task completion value
    std::string target;  // object id (box, goal, or object to track)
    std::string goal;    // goal object id for object-pose-divergence
    Vec3 target_offset = Vec3::Zero();
    DivergenceMetric metric = DivergenceMetric::pose;
    double rotation_scale = 1.0; // metres per radian in the pose metric

    void validate() const;
};

struct Objective {
    std::string name;
    Sense sense = Sense::maximize;
};

/// State of one action step as seen by the rewards.
struct StepSample {
    double t = 0.0;
    Pose ee;
    Pose reference;
    Vec6 contact_wrench = Vec6::Zero();
    std::map<std::string, Pose> objects;
    std::map<std::string, Vec3> sizes; // box extents for surface distances
};

struct EpisodeTrace {
    double dt = 0.02;
    std::vector<StepSample> steps; // steps[0] is the initial state
    bool success = false;
};

/// 1 / (2 (d + d_o)).
double reward_ee_box(double d, double d_o);
/// exp(-(d_m + d_o) / (2 sigma^2)).
double reward_exp(double d_m, double sigma, double d_o);
double reward_task_completion(bool success, double fixed);
/// Trapezoidal integral of uniformly sampled force magnitudes.
double reward_applied_wrench(std::span<const double> force_magnitudes, double dt);

/// Distance from `p` to a (possibly rotated) box surface; 0 inside.
double box_distance(const Vec3& p, const Pose& box, const Vec3& size);

/// Weighted reward sums per objective, in the order of `objectives`.
std::vector<double> accumulate(const EpisodeTrace& trace, const std::vector<RewardSpec>& specs,
                               const std::vector<Objective>& objectives);

/// Value of one reward over a trace (unweighted).
double evaluate(const EpisodeTrace& trace, const RewardSpec& spec);

} // namespace skilltune::rewards

#endif
