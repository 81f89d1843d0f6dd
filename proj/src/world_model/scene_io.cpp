#include "skilltune/world_model/scene_io.hpp"

#include <cmath>
#include <fstream>

namespace skilltune::wm {

using nlohmann::json;

namespace {

std::string require_string(const json& j, const char* key, const char* where)
{
    if (!j.contains(key) || !j.at(key).is_string()) {
        throw ConfigError(std::string(where) + ": missing string field '" + key + "'");
    }
    return j.at(key).get<std::string>();
}

ConditionPattern condition_from_json(const json& j)
{
    ConditionPattern c;
    c.predicate = require_string(j, "predicate", "condition");
    c.subject = require_string(j, "subject", "condition");
    c.object = require_string(j, "object", "condition");
    c.negated = j.value("negated", false);
    return c;
}

json condition_to_json(const ConditionPattern& c)
{
    json j = {{"predicate", c.predicate}, {"subject", c.subject}, {"object", c.object}};
    if (c.negated) {
        j["negated"] = true;
    }
    return j;
}

Relation relation_from_json(const json& j)
{
    return Relation{require_string(j, "subject", "relation"), require_string(j, "predicate", "relation"),
                    require_string(j, "object", "relation")};
}

json relation_to_json(const Relation& r)
{
    return {{"subject", r.subject}, {"predicate", r.predicate}, {"object", r.object}};
}

SkillParameter parameter_from_json(const json& j)
{
    SkillParameter p;
    p.name = require_string(j, "name", "skill parameter");
    p.semantic_type = j.value("semantic_type", std::string("number"));
    p.default_value = j.value("default", 0.0);
    p.learnable = j.value("learnable", false);
    p.type = opt::param_type_from_string(j.value("type", std::string("real")));
    if (j.contains("bounds")) {
        const auto& b = j.at("bounds");
        if (!b.is_array() || b.size() != 2) {
            throw ConfigError("parameter '" + p.name + "': bounds must be [lower, upper]");
        }
        p.lower = b[0].get<double>();
        p.upper = b[1].get<double>();
    }
    if (j.contains("values")) {
        p.values = j.at("values").get<std::vector<double>>();
    }
    return p;
}

json parameter_to_json(const SkillParameter& p)
{
    json j = {{"name", p.name},
              {"semantic_type", p.semantic_type},
              {"default", p.default_value},
              {"learnable", p.learnable},
              {"type", opt::to_string(p.type)}};
    if (p.lower && p.upper) {
        j["bounds"] = {*p.lower, *p.upper};
    }
    if (!p.values.empty()) {
        j["values"] = p.values;
    }
    return j;
}

} // namespace

Pose pose_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 7) {
        throw ConfigError("pose must be an array [x, y, z, qx, qy, qz, qw]");
    }
    std::array<double, 7> v{};
    for (std::size_t i = 0; i < 7; ++i) {
        v[i] = j[i].get<double>();
    }
    Pose p = Pose::from_array(v);
    if (!is_unit(p.orientation, 1e-12)) {
        if (!is_unit(p.orientation, 1e-6)) {
            throw ConfigError("pose quaternion is not normalized");
        }
        p.orientation.normalize();
    }
    return p;
}

json pose_to_json(const Pose& p)
{
    const auto a = p.to_array();
    return json(std::vector<double>(a.begin(), a.end()));
}

WorldModel world_model_from_json(const json& scene)
{
    WorldModel model;
    for (const auto& o : scene.value("objects", json::array())) {
        WmObject obj;
        obj.id = require_string(o, "id", "object");
        obj.kind = require_string(o, "kind", "object");
        obj.pose = o.contains("pose") ? pose_from_json(o.at("pose")) : Pose{};
        if (o.contains("properties")) {
            obj.properties = o.at("properties").get<std::map<std::string, double>>();
        }
        model.add_object(std::move(obj));
    }
    for (const auto& r : scene.value("relations", json::array())) {
        model.add_relation(relation_from_json(r));
    }
    for (const auto& s : scene.value("skills", json::array())) {
        SkillTemplate t;
        t.name = require_string(s, "name", "skill");
        for (const auto& a : s.value("arguments", json::array())) {
            t.arguments.push_back({require_string(a, "name", "skill argument"), require_string(a, "type", "skill argument")});
        }
        for (const auto& p : s.value("parameters", json::array())) {
            t.parameters.push_back(parameter_from_json(p));
        }
        for (const auto& c : s.value("preconditions", json::array())) {
            t.preconditions.push_back(condition_from_json(c));
        }
        for (const auto& c : s.value("postconditions", json::array())) {
            t.postconditions.push_back(condition_from_json(c));
        }
        model.add_skill(std::move(t));
    }
    std::vector<Relation> goal;
    for (const auto& g : scene.value("goal", json::array())) {
        goal.push_back(relation_from_json(g));
    }
    model.set_goal(std::move(goal));
    return model;
}

json to_json(const WorldModel& model)
{
    json objects = json::array();
    for (const auto& o : model.objects()) {
        objects.push_back({{"id", o.id}, {"kind", o.kind}, {"pose", pose_to_json(o.pose)}, {"properties", o.properties}});
    }
    json relations = json::array();
    for (const auto& r : model.relations()) {
        relations.push_back(relation_to_json(r));
    }
    json skills = json::array();
    for (const auto& s : model.skills()) {
        json args = json::array();
        for (const auto& a : s.arguments) {
            args.push_back({{"name", a.name}, {"type", a.type}});
        }
        json params = json::array();
        for (const auto& p : s.parameters) {
            params.push_back(parameter_to_json(p));
        }
        json pre = json::array();
        for (const auto& c : s.preconditions) {
            pre.push_back(condition_to_json(c));
        }
        json post = json::array();
        for (const auto& c : s.postconditions) {
            post.push_back(condition_to_json(c));
        }
        skills.push_back({{"name", s.name},
                          {"arguments", args},
                          {"parameters", params},
                          {"preconditions", pre},
                          {"postconditions", post}});
    }
    json goal = json::array();
    for (const auto& g : model.goal()) {
        goal.push_back(relation_to_json(g));
    }
    return {{"objects", objects}, {"relations", relations}, {"skills", skills}, {"goal", goal}};
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open '" + path.string() + "'");
    }
    try {
        return json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("'" + path.string() + "': " + e.what());
    }
}

WorldModel load_scene_file(const std::filesystem::path& path)
{
    try {
        return world_model_from_json(read_json_file(path));
    } catch (const json::exception& e) {
        throw ConfigError("'" + path.string() + "': " + e.what());
    }
}

void save_scene_file(const WorldModel& model, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << to_json(model).dump(2) << '\n';
}

} // namespace skilltune::wm
