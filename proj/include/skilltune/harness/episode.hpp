#ifndef SKILLTUNE_HARNESS_EPISODE_HPP
#define SKILLTUNE_HARNESS_EPISODE_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "skilltune/bt/assemble.hpp"
#include "skilltune/harness/scenario.hpp"
#include "skilltune/rewards/rewards.hpp"

namespace skilltune::harness {

/// One randomized world: start pose of the arm and x/y displacement of objects.
struct World {
    std::uint64_t seed = 0;
    std::size_t start_index = 0;
    Pose start;
    std::map<std::string, Vec2> offsets;
};

World sample_world(const ScenarioConfig& cfg, std::uint64_t seed);
/// Unperturbed world at one of the configured start poses.
World nominal_world(const ScenarioConfig& cfg, std::size_t start_index = 0);

/// Scene as the skills see it in `world` (hidden displacements left out).
wm::WorldModel observed_model(const ScenarioConfig& cfg, const World& world);
/// True object poses in `world`.
std::map<std::string, Pose> true_poses(const ScenarioConfig& cfg, const World& world);

/// Geometric relations checked against the live observation; every other
/// relation holds iff it is in the scene.
class SceneConditions : public bt::ConditionEvaluator {
public:
    SceneConditions(const wm::WorldModel& model, const TaskSetup& task, const skills::Observation& obs);
    bool holds(const wm::Relation& r) const override;

private:
    const wm::WorldModel& model_;
    const TaskSetup& task_;
    const skills::Observation& obs_;
    std::set<wm::Relation> facts_;
};

struct EpisodeResult {
    bt::Status status = bt::Status::failure;
    bool success = false;
    bool aborted = false;
    double end_time = 0.0;     // when the tree finished, or the horizon
    std::vector<double> objectives;
    double effort = 0.0;       // time integral of |x_ee - x_d|
    double impulse = 0.0;      // time integral of the contact force magnitude
    rewards::EpisodeTrace trace; // filled only when requested
};

EpisodeResult run_episode(const ScenarioConfig& cfg, std::span<const wm::SkillInstance> plan, const World& world,
                          bool keep_trace = false);

/// One JSON object per line: t, ee, reference, force, objects.
void write_trace(const rewards::EpisodeTrace& trace, std::ostream& out);

} // namespace skilltune::harness

#endif
