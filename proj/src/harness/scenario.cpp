#include "skilltune/harness/scenario.hpp"

#include <algorithm>
#include <cstdio>

#include "skilltune/common/seeding.hpp"
#include "skilltune/world_model/scene_io.hpp"

namespace skilltune::harness {

using nlohmann::json;

std::string to_string(TaskKind k)
{
    switch (k) {
    case TaskKind::peg: return "peg";
    case TaskKind::push: return "push";
    default: return "free";
    }
}

TaskKind task_kind_from_string(const std::string& s)
{
    if (s == "peg") return TaskKind::peg;
    if (s == "push") return TaskKind::push;
    if (s == "free") return TaskKind::free;
    throw ConfigError("unknown task kind '" + s + "'");
}

namespace {

Vec3 vec3(const json& j)
{
    if (!j.is_array() || j.size() != 3) throw ConfigError("expected a 3-vector");
    return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Vec2 vec2(const json& j)
{
    if (!j.is_array() || j.size() != 2) throw ConfigError("expected a 2-vector");
    return Vec2(j[0].get<double>(), j[1].get<double>());
}

std::vector<std::string> strings(const json& j, const char* key)
{
    return j.contains(key) ? j.at(key).get<std::vector<std::string>>() : std::vector<std::string>{};
}

rewards::RewardSpec reward_from_json(const json& j)
{
    rewards::RewardSpec r;
    r.kind = rewards::reward_kind_from_string(j.at("kind").get<std::string>());
    r.objective = j.at("objective").get<std::string>();
    r.weight = j.value("weight", 1.0);
    r.sigma = j.value("sigma", 1.0);
    r.offset = j.value("offset", 0.0);
    r.fixed = j.value("fixed", 1.0);
    r.target = j.value("target", std::string{});
    r.goal = j.value("goal", std::string{});
    if (j.contains("target_offset")) r.target_offset = vec3(j["target_offset"]);
    const auto metric = j.value("metric", std::string("pose"));
    if (metric == "translation") r.metric = rewards::DivergenceMetric::translation;
    else if (metric == "rotation") r.metric = rewards::DivergenceMetric::rotation;
    else if (metric == "pose") r.metric = rewards::DivergenceMetric::pose;
    else throw ConfigError("unknown divergence metric '" + metric + "'");
    r.rotation_scale = j.value("rotation_scale", 1.0);
    r.validate();
    return r;
}

void read_learning(const json& j, LearningSettings& l)
{
    l.iterations = j.value("iterations", l.iterations);
    l.repeats = j.value("repeats", l.repeats);
    l.seed = j.value("seed", l.seed);
    auto& bo = l.bo;
    bo.warmup = j.value("warmup", bo.warmup);
    bo.candidates = j.value("candidates", bo.candidates);
    bo.refine_starts = j.value("refine_starts", bo.refine_starts);
    bo.refine_steps = j.value("refine_steps", bo.refine_steps);
    bo.restarts = j.value("restarts", bo.restarts);
    bo.fit_iterations = j.value("fit_iterations", bo.fit_iterations);
    bo.refit_growth = j.value("refit_growth", bo.refit_growth);
    bo.refit_every = j.value("refit_every", bo.refit_every);
    if (j.contains("scalarization")) bo.scalarization = opt::scalarization_from_string(j["scalarization"].get<std::string>());
}

void read_simulation(const json& j, ScenarioConfig& c)
{
    auto& s = c.sim;
    c.horizon = j.value("horizon", c.horizon);
    if (j.contains("fidelity")) s.fidelity = sim::fidelity_from_string(j["fidelity"].get<std::string>());
    s.dt = j.value("dt", s.dt);
    s.substeps = j.value("substeps", s.substeps);
    s.ee_mass = j.value("ee_mass", s.ee_mass);
    s.ee_inertia = j.value("ee_inertia", s.ee_inertia);
    s.controller.damping_ratio = j.value("damping_ratio", s.controller.damping_ratio);
    if (j.contains("peg")) {
        const auto& p = j["peg"];
        auto& peg = s.peg;
        peg.peg_radius = p.value("peg_radius", peg.peg_radius);
        peg.clearance = p.value("clearance", peg.clearance);
        peg.hole_depth = p.value("hole_depth", peg.hole_depth);
        peg.catch_depth = p.value("catch_depth", peg.catch_depth);
        if (p.contains("box_size")) peg.box_size = vec3(p["box_size"]);
        peg.contact.stiffness = p.value("contact_stiffness", peg.contact.stiffness);
        peg.contact.damping = p.value("contact_damping", peg.contact.damping);
        peg.contact.friction = p.value("friction", peg.contact.friction);
    }
    if (j.contains("push")) {
        const auto& p = j["push"];
        auto& push = s.push;
        if (p.contains("legs")) {
            const Vec2 legs = vec2(p["legs"]);
            push.shape = sim::right_triangle(legs.x(), legs.y());
        }
        if (p.contains("com_offset")) push.com_offset = vec2(p["com_offset"]);
        push.mass = p.value("mass", push.mass);
        push.height = p.value("height", push.height);
        push.ground_friction = p.value("ground_friction", push.ground_friction);
        push.pusher_side = p.value("pusher_side", push.pusher_side);
        push.pusher_height = p.value("pusher_height", push.pusher_height);
        push.pusher_friction = p.value("pusher_friction", push.pusher_friction);
        push.contact.stiffness = p.value("contact_stiffness", push.contact.stiffness);
        push.contact.damping = p.value("contact_damping", push.contact.damping);
    }
}

} // namespace

std::string ScenarioConfig::hash() const
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(document.dump())));
    return buf;
}

std::vector<Sense> ScenarioConfig::senses() const
{
    std::vector<Sense> out;
    for (const auto& o : objectives) out.push_back(o.sense);
    return out;
}

void ScenarioConfig::validate() const
{
    if (objectives.empty()) throw ConfigError("scenario declares no objectives");
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (objectives[i].name == objectives[j].name) {
                throw ConfigError("objective '" + objectives[i].name + "' declared twice");
            }
        }
    }
    for (const auto& r : rewards) {
        r.validate();
        const bool known = std::any_of(objectives.begin(), objectives.end(),
                                       [&](const rewards::Objective& o) { return o.name == r.objective; });
        if (!known) throw ConfigError("reward refers to unknown objective '" + r.objective + "'");
        for (const auto* id : {&r.target, &r.goal}) {
            if (!id->empty() && !model.find_object(*id)) throw ConfigError("reward target '" + *id + "' is not in the scene");
        }
    }
    if (randomization.worlds < 1) throw ConfigError("worlds per evaluation must be >= 1");
    if (!(randomization.sigma >= 0.0)) throw ConfigError("randomization sigma must be >= 0");
    if (randomization.start_poses.empty()) throw ConfigError("scenario needs at least one start pose");
    for (const auto& list : {&randomization.perturbed, &randomization.hidden}) {
        for (const auto& id : *list) {
            if (!model.find_object(id)) throw ConfigError("randomized object '" + id + "' is not in the scene");
        }
    }
    if (learning.iterations < 0 || learning.repeats < 1) throw ConfigError("invalid iteration or repeat count");
    if (learning.iterations > 0 && learning.iterations < learning.bo.warmup) {
        throw ConfigError("iterations must be >= warm-up samples");
    }
    if (!(horizon > 0.0)) throw ConfigError("episode horizon must be positive");
    if (!model.find_object(task.arm)) throw ConfigError("arm '" + task.arm + "' is not in the scene");
    switch (task.kind) {
    case TaskKind::peg:
        if (!model.find_object(task.peg) || !model.find_object(task.box)) {
            throw ConfigError("peg task needs existing peg and box objects");
        }
        break;
    case TaskKind::push:
        if (!model.find_object(task.object) || !model.find_object(task.goal)) {
            throw ConfigError("push task needs existing object and goal objects");
        }
        if (sim.push.shape.size() < 3) throw ConfigError("push task needs an object footprint");
        break;
    case TaskKind::free: break;
    }
}

ScenarioConfig scenario_from_json(const json& input, const std::filesystem::path& base_dir)
{
    ScenarioConfig c;
    try {
        json doc = input;
        if (!doc.contains("scene")) throw ConfigError("scenario has no scene");
        if (doc["scene"].is_string()) doc["scene"] = wm::read_json_file(base_dir / doc["scene"].get<std::string>());
        c.document = doc;
        c.name = doc.value("name", std::string("scenario"));
        c.model = wm::world_model_from_json(doc["scene"]);

        if (doc.contains("task")) {
            const auto& t = doc["task"];
            c.task.kind = task_kind_from_string(t.value("kind", std::string("free")));
            c.task.arm = t.value("arm", c.task.arm);
            c.task.peg = t.value("peg", std::string{});
            c.task.box = t.value("box", std::string{});
            c.task.object = t.value("object", std::string{});
            c.task.goal = t.value("goal", std::string{});
            c.task.arm_tolerance = t.value("arm_tolerance", c.task.arm_tolerance);
            c.task.position_tolerance = t.value("position_tolerance", c.task.position_tolerance);
            c.task.rotation_tolerance = t.value("rotation_tolerance_deg", c.task.rotation_tolerance);
            c.task.insertion_depth = t.value("insertion_depth", c.task.insertion_depth);
        }
        for (const auto& o : doc.at("objectives")) {
            c.objectives.push_back({o.at("name").get<std::string>(),
                                    sense_from_string(o.value("sense", std::string("maximize")))});
        }
        if (doc.contains("rewards")) {
            for (const auto& r : doc["rewards"]) c.rewards.push_back(reward_from_json(r));
        }
        if (doc.contains("learning")) read_learning(doc["learning"], c.learning);
        if (doc.contains("randomization")) {
            const auto& r = doc["randomization"];
            c.randomization.sigma = r.value("sigma", c.randomization.sigma);
            c.randomization.worlds = r.value("worlds", c.randomization.worlds);
            if (r.contains("start_poses")) {
                for (const auto& p : r["start_poses"]) c.randomization.start_poses.push_back(wm::pose_from_json(p));
            }
            c.randomization.perturbed = strings(r, "perturbed");
            c.randomization.hidden = strings(r, "hidden");
        }
        if (c.randomization.start_poses.empty()) {
            if (const auto* arm = c.model.find_object(c.task.arm)) c.randomization.start_poses.push_back(arm->pose);
        }
        if (doc.contains("simulation")) read_simulation(doc["simulation"], c);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    c.validate();
    return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path)
{
    auto c = scenario_from_json(wm::read_json_file(path), path.parent_path());
    c.source = path;
    return c;
}

} // namespace skilltune::harness
