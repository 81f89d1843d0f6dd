#include "skilltune/bt/assemble.hpp"

namespace skilltune::bt {

namespace {

std::string resolve(const std::string& term, const wm::SkillTemplate& t, const wm::SkillInstance& inst)
{
    if (term.empty() || term.front() != '?') return term;
    for (std::size_t i = 0; i < t.arguments.size(); ++i) {
        if (t.arguments[i].name == term) {
            if (i >= inst.arguments.size()) {
                throw TreeError("skill instance " + inst.skill + " is missing argument " + term);
            }
            return inst.arguments[i];
        }
    }
    throw TreeError("skill " + t.name + " uses undeclared argument " + term);
}

std::string label(const wm::Relation& r, bool negated)
{
    std::string s = "(" + r.predicate + " " + r.subject + " " + r.object + ")";
    return negated ? "(not " + s + ")" : s;
}

NodePtr condition(const wm::Relation& r, bool negated)
{
    return std::make_unique<ConditionLeaf>(label(r, negated), [r, negated](const Blackboard& bb) {
        const auto* eval = bb.find<const ConditionEvaluator*>(kConditions);
        if (!eval || !*eval) throw TreeError("no condition evaluator on the blackboard");
        return (*eval)->holds(r) != negated;
    });
}

} // namespace

wm::Relation bind(const wm::ConditionPattern& c, const wm::SkillTemplate& t, const wm::SkillInstance& inst)
{
    return {resolve(c.subject, t, inst), c.predicate, resolve(c.object, t, inst)};
}

NodePtr assemble_bt(std::span<const wm::SkillInstance> plan, const wm::WorldModel& model,
                    const skills::SkillRegistry& registry)
{
    if (plan.empty()) return constant(Status::success, "empty-plan");
    std::vector<NodePtr> steps;
    for (const auto& inst : plan) {
        const auto* entry = registry.find(inst.skill);
        if (!entry) throw TreeError("no behaviour tree expansion registered for skill '" + inst.skill + "'");
        const auto& t = model.skill(inst.skill);
        std::vector<NodePtr> parts;
        for (const auto& c : t.preconditions) parts.push_back(condition(bind(c, t, inst), c.negated));
        parts.push_back(entry->expand(inst, model));
        for (const auto& c : t.postconditions) parts.push_back(condition(bind(c, t, inst), c.negated));
        std::string name = inst.skill;
        for (const auto& a : inst.arguments) name += " " + a;
        steps.push_back(std::make_unique<SequenceStar>(name, std::move(parts)));
    }
    return std::make_unique<SequenceStar>("plan", std::move(steps));
}

} // namespace skilltune::bt
