#ifndef SKILLTUNE_SKILLS_SKILLS_HPP
#define SKILLTUNE_SKILLS_SKILLS_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "skilltune/bt/behavior_tree.hpp"
#include "skilltune/skills/motion_command.hpp"
#include "skilltune/world_model/world_model.hpp"

namespace skilltune::skills {

// Blackboard keys.
// "observation": Observation, written by the episode loop before each tick.
// "command":     MotionCommand, written by skill leaves, read by the motion generator.
inline const std::string kObservation = "observation";
inline const std::string kCommand = "command";

struct Observation {
    double time = 0.0;
    double dt = 0.02; // tick period
    Pose ee;
    Vec6 twist = Vec6::Zero();
    Pose reference;
    Vec6 contact_wrench = Vec6::Zero();
    double insertion_depth = 0.0;
    std::map<std::string, Pose> objects; // live poses of movable objects
    bool segment_done = false;
    bool overlay_done = false;
};

/// Builds the processor subtree that executes one skill instance.
using Expansion = std::function<bt::NodePtr(const wm::SkillInstance&, const wm::WorldModel&)>;

struct SkillEntry {
    Expansion expand;
    std::vector<std::string> parameters; // names the expansion reads
};

class SkillRegistry {
public:
    void add(const std::string& name, SkillEntry entry);
    const SkillEntry* find(const std::string& name) const;
    std::vector<std::string> names() const;

    /// Throws ConfigError if the template declares a parameter the skill does not read.
    void check(const wm::SkillTemplate& t) const;

    /// GoToLinear, Push and PegInsertion.
    static const SkillRegistry& builtin();

private:
    std::map<std::string, SkillEntry> entries_;
};

/// Parameter value of an instance, or `fallback` if unbound.
double parameter(const wm::SkillInstance& inst, const std::string& name, double fallback);

bt::NodePtr expand_go_to_linear(const wm::SkillInstance& inst, const wm::WorldModel& model);
bt::NodePtr expand_push(const wm::SkillInstance& inst, const wm::WorldModel& model);
bt::NodePtr expand_peg_insertion(const wm::SkillInstance& inst, const wm::WorldModel& model);

/// Object pose error against a goal: (translation m, rotation rad).
std::pair<double, double> pose_divergence(const Pose& object, const Pose& goal);

} // namespace skilltune::skills

#endif
