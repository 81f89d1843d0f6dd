#ifndef SKILLTUNE_WORLD_MODEL_WORLD_MODEL_HPP
#define SKILLTUNE_WORLD_MODEL_WORLD_MODEL_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "skilltune/common/error.hpp"
#include "skilltune/common/geometry.hpp"
#include "skilltune/opt/param_space.hpp"

namespace skilltune::wm {

class DuplicateIdError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class UnknownIdError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

struct WmObject {
    std::string id;
    std::string kind;
    Pose pose;
    std::map<std::string, double> properties;

    double property(const std::string& key) const;
    double property_or(const std::string& key, double fallback) const;
    bool operator==(const WmObject&) const = default;
};

struct Relation {
    std::string subject;
    std::string predicate;
    std::string object;

    auto operator<=>(const Relation&) const = default;
};

/// A relation pattern inside a skill's pre/postconditions. Terms starting with
/// '?' refer to skill arguments; anything else names a model object.
struct ConditionPattern {
    std::string predicate;
    std::string subject;
    std::string object;
    bool negated = false;

    bool operator==(const ConditionPattern&) const = default;
};

struct SkillArgument {
    std::string name; // including the leading '?'
    std::string type; // object kind
    bool operator==(const SkillArgument&) const = default;
};

struct SkillParameter {
    std::string name;
    std::string semantic_type;
    double default_value = 0.0;
    bool learnable = false;
    opt::ParamType type = opt::ParamType::real;
    std::optional<double> lower;
    std::optional<double> upper;
    std::vector<double> values;

    bool operator==(const SkillParameter&) const = default;
};

struct SkillTemplate {
    std::string name;
    std::vector<SkillArgument> arguments;
    std::vector<SkillParameter> parameters;
    std::vector<ConditionPattern> preconditions;
    std::vector<ConditionPattern> postconditions;

    const SkillParameter* find_parameter(const std::string& name) const;
    bool operator==(const SkillTemplate&) const = default;
};

/// A grounded skill in a plan.
struct SkillInstance {
    std::string skill;
    std::vector<std::string> arguments;
    std::map<std::string, double> parameters;

    bool operator==(const SkillInstance&) const = default;
};

class WorldModel {
public:
    void add_object(WmObject object);
    void add_relation(Relation relation);
    void add_skill(SkillTemplate skill);
    void set_goal(std::vector<Relation> goal);

    const WmObject& object(const std::string& id) const;
    const WmObject* find_object(const std::string& id) const;
    WmObject& mutable_object(const std::string& id);
    const SkillTemplate& skill(const std::string& name) const;
    const SkillTemplate* find_skill(const std::string& name) const;

    const std::vector<WmObject>& objects() const { return objects_; }
    const std::vector<Relation>& relations() const { return relations_; }
    const std::vector<SkillTemplate>& skills() const { return skills_; }
    const std::vector<Relation>& goal() const { return goal_; }

    bool has_relation(const Relation& r) const;

    bool operator==(const WorldModel& other) const;

private:
    std::vector<WmObject> objects_;
    std::unordered_map<std::string, std::size_t> object_index_;
    std::vector<Relation> relations_;
    std::vector<SkillTemplate> skills_;
    std::vector<Relation> goal_;
};

/// Name under which a learnable parameter appears in the search space.
std::string learnable_name(const std::string& skill, const std::string& parameter, int occurrence);

/// Parameters flagged learnable across the plan, in plan order then declaration order.
opt::ParamSpace collect_learnables(const WorldModel& model, std::span<const SkillInstance> plan);

/// Fills each instance's parameter map: defaults first, then learnable values
/// from `config` (laid out as returned by collect_learnables).
std::vector<SkillInstance> bind_parameters(const WorldModel& model, std::span<const SkillInstance> plan,
                                           const opt::ParamSpace& space, std::span<const double> config);

} // namespace skilltune::wm

#endif
