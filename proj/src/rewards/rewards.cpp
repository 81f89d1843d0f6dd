#include "skilltune/rewards/rewards.hpp"

#include <algorithm>
#include <cmath>

namespace skilltune::rewards {

std::string to_string(RewardKind k)
{
    switch (k) {
    case RewardKind::task_completion: return "task-completion";
    case RewardKind::ee_box_distance: return "ee-box-distance";
    case RewardKind::applied_wrench: return "applied-wrench";
    case RewardKind::ee_goal_distance: return "ee-goal-distance";
    case RewardKind::ee_reference_distance: return "ee-reference-distance";
    case RewardKind::object_pose_divergence: return "object-pose-divergence";
    }
    return "?";
}

RewardKind reward_kind_from_string(const std::string& s)
{
    for (auto k : {RewardKind::task_completion, RewardKind::ee_box_distance, RewardKind::applied_wrench,
                   RewardKind::ee_goal_distance, RewardKind::ee_reference_distance,
                   RewardKind::object_pose_divergence}) {
        if (to_string(k) == s) return k;
    }
    throw ConfigError("unknown reward kind '" + s + "'");
}

void RewardSpec::validate() const
{
    if (!std::isfinite(weight)) throw ConfigError("reward weight must be finite");
    if (!(offset >= 0.0) || !std::isfinite(offset)) throw ConfigError("reward offset d_o must be >= 0");
    const bool exp_kind = kind == RewardKind::ee_goal_distance || kind == RewardKind::ee_reference_distance ||
                          kind == RewardKind::object_pose_divergence;
    if (exp_kind && !(sigma > 0.0)) throw ConfigError("reward width sigma must be > 0");
    if ((kind == RewardKind::ee_box_distance || kind == RewardKind::ee_goal_distance) && target.empty()) {
        throw ConfigError(to_string(kind) + " reward needs a target object");
    }
    if (kind == RewardKind::object_pose_divergence && (target.empty() || goal.empty())) {
        throw ConfigError("object-pose-divergence reward needs target and goal objects");
    }
    if (objective.empty()) throw ConfigError("reward has no objective");
}

double reward_ee_box(double d, double d_o)
{
    if (d + d_o <= 0.0) throw ConfigError("ee-box reward with zero distance and zero offset");
    return 1.0 / (2.0 * (d + d_o));
}

double reward_exp(double d_m, double sigma, double d_o)
{
    return std::exp(-(d_m + d_o) / (2.0 * sigma * sigma));
}

double reward_task_completion(bool success, double fixed)
{
    return success ? fixed : 0.0;
}

double reward_applied_wrench(std::span<const double> f, double dt)
{
    double sum = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) sum += 0.5 * (f[i - 1] + f[i]) * dt;
    return sum;
}

double box_distance(const Vec3& p, const Pose& box, const Vec3& size)
{
    const Vec3 local = box.orientation.conjugate() * (p - box.position);
    const Vec3 outside = (local.cwiseAbs() - size / 2.0).cwiseMax(0.0);
    return outside.norm();
}

namespace {

const Pose& lookup(const StepSample& s, const std::string& id)
{
    auto it = s.objects.find(id);
    if (it == s.objects.end()) throw ConfigError("reward references unknown object '" + id + "'");
    return it->second;
}

double step_reward(const StepSample& s, const RewardSpec& spec)
{
    switch (spec.kind) {
    case RewardKind::ee_box_distance: {
        auto it = s.sizes.find(spec.target);
        if (it == s.sizes.end()) throw ConfigError("ee-box reward target '" + spec.target + "' has no size");
        return reward_ee_box(box_distance(s.ee.position, lookup(s, spec.target), it->second), spec.offset);
    }
    case RewardKind::ee_goal_distance: {
        const Vec3 g = lookup(s, spec.target).position + spec.target_offset;
        return reward_exp((s.ee.position - g).norm(), spec.sigma, spec.offset);
    }
    case RewardKind::ee_reference_distance:
        return reward_exp((s.ee.position - s.reference.position).norm(), spec.sigma, spec.offset);
    case RewardKind::object_pose_divergence: {
        const Pose& o = lookup(s, spec.target);
        const Pose& g = lookup(s, spec.goal);
        const double dp = (o.position - g.position).norm();
        const double da = o.orientation.angularDistance(g.orientation);
        double d = 0.0;
        switch (spec.metric) {
        case DivergenceMetric::translation: d = dp; break;
        case DivergenceMetric::rotation: d = da; break;
        case DivergenceMetric::pose: d = dp + spec.rotation_scale * da; break;
        }
        return reward_exp(d, spec.sigma, spec.offset);
    }
    default: return 0.0;
    }
}

} // namespace

double evaluate(const EpisodeTrace& trace, const RewardSpec& spec)
{
    switch (spec.kind) {
    case RewardKind::task_completion: return reward_task_completion(trace.success, spec.fixed);
    case RewardKind::applied_wrench: {
        std::vector<double> f;
        f.reserve(trace.steps.size());
        for (const auto& s : trace.steps) f.push_back(s.contact_wrench.head<3>().norm());
        return reward_applied_wrench(f, trace.dt);
    }
    default: {
        double sum = 0.0;
        for (std::size_t i = 1; i < trace.steps.size(); ++i) sum += step_reward(trace.steps[i], spec);
        return sum;
    }
    }
}

std::vector<double> accumulate(const EpisodeTrace& trace, const std::vector<RewardSpec>& specs,
                               const std::vector<Objective>& objectives)
{
    std::vector<double> out(objectives.size(), 0.0);
    for (const auto& spec : specs) {
        auto it = std::find_if(objectives.begin(), objectives.end(),
                               [&](const Objective& o) { return o.name == spec.objective; });
        if (it == objectives.end()) throw ConfigError("reward refers to unknown objective '" + spec.objective + "'");
        out[static_cast<std::size_t>(it - objectives.begin())] += spec.weight * evaluate(trace, spec);
    }
    return out;
}

} // namespace skilltune::rewards
