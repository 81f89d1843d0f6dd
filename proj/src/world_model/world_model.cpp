#include "skilltune/world_model/world_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace skilltune::wm {

namespace {

constexpr std::array<const char*, 9> kPositiveProperties = {
    "mass", "size_x", "size_y", "size_z", "radius", "hole_radius", "hole_depth", "height", "side",
};

bool is_variable(const std::string& term)
{
    return !term.empty() && term.front() == '?';
}

} // namespace

double WmObject::property(const std::string& key) const
{
    auto it = properties.find(key);
    if (it == properties.end()) {
        throw ConfigError("object '" + id + "' has no property '" + key + "'");
    }
    return it->second;
}

double WmObject::property_or(const std::string& key, double fallback) const
{
    auto it = properties.find(key);
    return it == properties.end() ? fallback : it->second;
}

const SkillParameter* SkillTemplate::find_parameter(const std::string& pname) const
{
    for (const auto& p : parameters) {
        if (p.name == pname) {
            return &p;
        }
    }
    return nullptr;
}

void WorldModel::add_object(WmObject object)
{
    if (object.id.empty()) {
        throw ConfigError("object id must not be empty");
    }
    if (object_index_.contains(object.id)) {
        throw DuplicateIdError("duplicate object id '" + object.id + "'");
    }
    if (!is_unit(object.pose.orientation)) {
        throw ConfigError("object '" + object.id + "' orientation is not a unit quaternion");
    }
    if (!object.pose.position.allFinite()) {
        throw ConfigError("object '" + object.id + "' position is not finite");
    }
    for (const char* key : kPositiveProperties) {
        auto it = object.properties.find(key);
        if (it != object.properties.end() && !(it->second > 0.0 && std::isfinite(it->second))) {
            throw ConfigError("object '" + object.id + "' property '" + key + "' must be positive");
        }
    }
    object_index_.emplace(object.id, objects_.size());
    objects_.push_back(std::move(object));
}

void WorldModel::add_relation(Relation relation)
{
    if (!find_object(relation.subject)) {
        throw UnknownIdError("relation subject '" + relation.subject + "' is not a model object");
    }
    if (!find_object(relation.object)) {
        throw UnknownIdError("relation object '" + relation.object + "' is not a model object");
    }
    relations_.push_back(std::move(relation));
}

void WorldModel::add_skill(SkillTemplate skill)
{
    if (find_skill(skill.name)) {
        throw DuplicateIdError("duplicate skill template '" + skill.name + "'");
    }
    auto check_term = [&](const std::string& term, const char* where) {
        if (is_variable(term)) {
            const bool declared = std::any_of(skill.arguments.begin(), skill.arguments.end(),
                                              [&](const SkillArgument& a) { return a.name == term; });
            if (!declared) {
                throw ConfigError("skill '" + skill.name + "' " + where + " uses undeclared argument '" + term + "'");
            }
        } else if (!find_object(term)) {
            throw UnknownIdError("skill '" + skill.name + "' " + where + " references unknown object '" + term + "'");
        }
    };
    for (const auto& c : skill.preconditions) {
        check_term(c.subject, "precondition");
        check_term(c.object, "precondition");
    }
    for (const auto& c : skill.postconditions) {
        check_term(c.subject, "postcondition");
        check_term(c.object, "postcondition");
    }
    for (const auto& a : skill.arguments) {
        if (!is_variable(a.name)) {
            throw ConfigError("skill '" + skill.name + "' argument '" + a.name + "' must start with '?'");
        }
    }
    for (const auto& p : skill.parameters) {
        if (!p.learnable) {
            continue;
        }
        if (p.type == opt::ParamType::real || p.type == opt::ParamType::integer) {
            if (!p.lower || !p.upper || !std::isfinite(*p.lower) || !std::isfinite(*p.upper) || !(*p.lower < *p.upper)) {
                throw ConfigError("learnable parameter '" + skill.name + "." + p.name + "' is missing finite bounds");
            }
        } else if (p.values.empty()) {
            throw ConfigError("learnable parameter '" + skill.name + "." + p.name + "' is missing its value list");
        }
    }
    skills_.push_back(std::move(skill));
}

void WorldModel::set_goal(std::vector<Relation> goal)
{
    for (const auto& g : goal) {
        if (!find_object(g.subject) || !find_object(g.object)) {
            throw UnknownIdError("goal literal (" + g.predicate + " " + g.subject + " " + g.object +
                                 ") references an unknown object");
        }
    }
    goal_ = std::move(goal);
}

const WmObject& WorldModel::object(const std::string& id) const
{
    const auto* o = find_object(id);
    if (!o) {
        throw UnknownIdError("unknown object '" + id + "'");
    }
    return *o;
}

const WmObject* WorldModel::find_object(const std::string& id) const
{
    auto it = object_index_.find(id);
    return it == object_index_.end() ? nullptr : &objects_[it->second];
}

WmObject& WorldModel::mutable_object(const std::string& id)
{
    auto it = object_index_.find(id);
    if (it == object_index_.end()) {
        throw UnknownIdError("unknown object '" + id + "'");
    }
    return objects_[it->second];
}

const SkillTemplate& WorldModel::skill(const std::string& name) const
{
    const auto* s = find_skill(name);
    if (!s) {
        throw UnknownIdError("unknown skill template '" + name + "'");
    }
    return *s;
}

const SkillTemplate* WorldModel::find_skill(const std::string& name) const
{
    for (const auto& s : skills_) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

bool WorldModel::has_relation(const Relation& r) const
{
    return std::find(relations_.begin(), relations_.end(), r) != relations_.end();
}

bool WorldModel::operator==(const WorldModel& other) const
{
    return objects_ == other.objects_ && relations_ == other.relations_ && skills_ == other.skills_ &&
           goal_ == other.goal_;
}

std::string learnable_name(const std::string& skill, const std::string& parameter, int occurrence)
{
    std::string name = skill + "." + parameter;
    if (occurrence > 1) {
        name += "#" + std::to_string(occurrence);
    }
    return name;
}

opt::ParamSpace collect_learnables(const WorldModel& model, std::span<const SkillInstance> plan)
{
    opt::ParamSpace space;
    std::map<std::string, int> seen;
    for (const auto& inst : plan) {
        const auto& tmpl = model.skill(inst.skill);
        const int occurrence = ++seen[inst.skill];
        for (const auto& p : tmpl.parameters) {
            if (!p.learnable) {
                continue;
            }
            opt::Parameter param;
            param.name = learnable_name(inst.skill, p.name, occurrence);
            param.type = p.type;
            if (p.type == opt::ParamType::real || p.type == opt::ParamType::integer) {
                if (!p.lower || !p.upper) {
                    throw ConfigError("learnable parameter '" + param.name + "' is missing bounds");
                }
                param.lower = *p.lower;
                param.upper = *p.upper;
            } else {
                param.values = p.values;
            }
            space.add(std::move(param));
        }
    }
    return space;
}

std::vector<SkillInstance> bind_parameters(const WorldModel& model, std::span<const SkillInstance> plan,
                                           const opt::ParamSpace& space, std::span<const double> config)
{
    if (config.size() != space.size()) {
        throw Error("configuration size does not match the learnable parameter space");
    }
    std::vector<SkillInstance> bound(plan.begin(), plan.end());
    std::map<std::string, int> seen;
    for (auto& inst : bound) {
        const auto& tmpl = model.skill(inst.skill);
        const int occurrence = ++seen[inst.skill];
        for (const auto& p : tmpl.parameters) {
            if (!inst.parameters.contains(p.name)) {
                inst.parameters[p.name] = p.default_value;
            }
            if (p.learnable) {
                const auto idx = space.index_of(learnable_name(inst.skill, p.name, occurrence));
                if (idx < 0) {
                    throw Error("parameter space lacks learnable '" + p.name + "' of skill " + inst.skill);
                }
                double v = config[static_cast<std::size_t>(idx)];
                if (p.type == opt::ParamType::categorical) {
                    v = p.values.at(static_cast<std::size_t>(std::lround(v)));
                }
                inst.parameters[p.name] = v;
            }
        }
    }
    return bound;
}

} // namespace skilltune::wm
