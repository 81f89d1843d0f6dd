#ifndef SKILLTUNE_PDDL_GENERATE_HPP
#define SKILLTUNE_PDDL_GENERATE_HPP

#include <string>
#include <vector>

#include "skilltune/pddl/pddl.hpp"
#include "skilltune/world_model/world_model.hpp"

namespace skilltune::pddl {

/// "GoToLinear" -> "go-to-linear".
std::string action_name_for(const std::string& skill_name);

/// One action per skill template; predicates come from the condition patterns.
Domain generate_domain(const wm::WorldModel& model, const std::string& domain_name = "skills");

/// Objects typed by kind, relations as the initial state, the model goal as goal.
Problem generate_problem(const wm::WorldModel& model, const std::string& domain_name = "skills",
                         const std::string& problem_name = "task");

/// Maps planner actions back to skill instances of the model.
std::vector<wm::SkillInstance> to_skill_instances(const Plan& plan, const wm::WorldModel& model);

} // namespace skilltune::pddl

#endif
