#ifndef SKILLTUNE_BT_ASSEMBLE_HPP
#define SKILLTUNE_BT_ASSEMBLE_HPP

#include <span>
#include <string>

#include "skilltune/bt/behavior_tree.hpp"
#include "skilltune/skills/skills.hpp"
#include "skilltune/world_model/world_model.hpp"

namespace skilltune::bt {

/// Decides whether a grounded relation currently holds.
class ConditionEvaluator {
public:
    virtual ~ConditionEvaluator() = default;
    virtual bool holds(const wm::Relation& r) const = 0;
};

/// Blackboard key of a `const ConditionEvaluator*`.
inline const std::string kConditions = "conditions";

/// Substitutes skill arguments into a condition pattern.
wm::Relation bind(const wm::ConditionPattern& c, const wm::SkillTemplate& t, const wm::SkillInstance& inst);

/// Root sequence-star over the plan; each skill becomes
/// sequence-star(preconditions..., processor, postconditions...).
NodePtr assemble_bt(std::span<const wm::SkillInstance> plan, const wm::WorldModel& model,
                    const skills::SkillRegistry& registry = skills::SkillRegistry::builtin());

} // namespace skilltune::bt

#endif
