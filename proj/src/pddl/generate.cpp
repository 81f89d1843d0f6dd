#include "skilltune/pddl/generate.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace skilltune::pddl {

std::string action_name_for(const std::string& skill_name)
{
    std::string out;
    for (std::size_t i = 0; i < skill_name.size(); ++i) {
        const char c = skill_name[i];
        if (std::isupper(static_cast<unsigned char>(c))) {
            if (i > 0 && skill_name[i - 1] != '-' && skill_name[i - 1] != '_') {
                out.push_back('-');
            }
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (c == '_') {
            out.push_back('-');
        } else {
            out.push_back(c);
        }
    }
    return out;
}

Domain generate_domain(const wm::WorldModel& model, const std::string& domain_name)
{
    if (model.skills().empty()) {
        throw PddlError("world model has no skill templates to translate");
    }
    Domain d;
    d.name = domain_name;
    d.requirements = {":strips", ":typing"};

    std::vector<std::string> types;
    auto add_type = [&](const std::string& t) {
        if (t != "object" && std::find(types.begin(), types.end(), t) == types.end()) {
            types.push_back(t);
        }
    };
    for (const auto& o : model.objects()) add_type(o.kind);
    for (const auto& s : model.skills()) {
        for (const auto& a : s.arguments) add_type(a.type);
    }
    for (const auto& t : types) d.types.push_back({t, "object"});

    auto declare = [&](const std::string& predicate, const std::string& skill) {
        if (predicate.empty() || predicate.front() == '?' || predicate.find_first_of("() ") != std::string::npos) {
            throw PddlError("skill '" + skill + "' has an unresolvable predicate pattern '" + predicate + "'");
        }
        if (!d.find_predicate(predicate)) {
            d.predicates.push_back({predicate, {{"?a", "object"}, {"?b", "object"}}});
        }
    };

    for (const auto& s : model.skills()) {
        ActionSchema a;
        a.name = action_name_for(s.name);
        for (const auto& arg : s.arguments) {
            a.params.push_back({arg.name, arg.type});
        }
        auto to_atom = [&](const wm::ConditionPattern& c) {
            for (const auto* term : {&c.subject, &c.object}) {
                if (term->empty() || term->front() != '?') {
                    throw PddlError("skill '" + s.name + "' has an unresolvable predicate pattern (" + c.predicate +
                                    " " + c.subject + " " + c.object + "): terms must be skill arguments");
                }
            }
            declare(c.predicate, s.name);
            return Atom{c.predicate, {c.subject, c.object}};
        };
        for (const auto& c : s.preconditions) {
            if (c.negated) {
                throw PddlError("skill '" + s.name + "' has a negated precondition, which STRIPS cannot express");
            }
            a.precondition.push_back(to_atom(c));
        }
        for (const auto& c : s.postconditions) {
            (c.negated ? a.del_effects : a.add_effects).push_back(to_atom(c));
        }
        d.actions.push_back(std::move(a));
    }
    for (const auto& r : model.relations()) declare(r.predicate, "relations");
    for (const auto& g : model.goal()) declare(g.predicate, "goal");
    validate_domain(d);
    return d;
}

Problem generate_problem(const wm::WorldModel& model, const std::string& domain_name,
                         const std::string& problem_name)
{
    Problem p;
    p.name = problem_name;
    p.domain = domain_name;
    for (const auto& o : model.objects()) {
        p.objects.push_back({o.id, o.kind});
    }
    for (const auto& r : model.relations()) {
        p.init.push_back({r.predicate, {r.subject, r.object}});
    }
    for (const auto& g : model.goal()) {
        p.goal.push_back({g.predicate, {g.subject, g.object}});
    }
    return p;
}

std::vector<wm::SkillInstance> to_skill_instances(const Plan& plan, const wm::WorldModel& model)
{
    std::vector<wm::SkillInstance> out;
    for (const auto& step : plan) {
        const wm::SkillTemplate* match = nullptr;
        for (const auto& s : model.skills()) {
            if (action_name_for(s.name) == step.name) {
                match = &s;
                break;
            }
        }
        if (!match) {
            throw PddlError("plan step " + to_string(step) + " does not correspond to a skill template");
        }
        out.push_back({match->name, step.args, {}});
    }
    return out;
}

} // namespace skilltune::pddl
