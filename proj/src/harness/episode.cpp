#include "skilltune/harness/episode.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include <json.hpp>

#include "skilltune/sim/motion_generator.hpp"
#include "skilltune/world_model/scene_io.hpp"

namespace skilltune::harness {

World sample_world(const ScenarioConfig& cfg, std::uint64_t seed)
{
    World w;
    w.seed = seed;
    std::mt19937_64 rng(seed);
    const auto& r = cfg.randomization;
    std::uniform_int_distribution<std::size_t> pick(0, r.start_poses.size() - 1);
    w.start_index = pick(rng);
    w.start = r.start_poses[w.start_index];
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (const auto& id : r.perturbed) {
        const double dx = gauss(rng);
        const double dy = gauss(rng);
        w.offsets[id] = r.sigma * Vec2(dx, dy);
    }
    return w;
}

World nominal_world(const ScenarioConfig& cfg, std::size_t start_index)
{
    const auto& poses = cfg.randomization.start_poses;
    if (start_index >= poses.size()) throw ConfigError("start pose index out of range");
    World w;
    w.start_index = start_index;
    w.start = poses[start_index];
    return w;
}

namespace {

bool is_hidden(const ScenarioConfig& cfg, const std::string& id)
{
    const auto& h = cfg.randomization.hidden;
    return std::find(h.begin(), h.end(), id) != h.end();
}

void displace(Pose& p, const Vec2& d)
{
    p.position.x() += d.x();
    p.position.y() += d.y();
}

} // namespace

wm::WorldModel observed_model(const ScenarioConfig& cfg, const World& world)
{
    wm::WorldModel m = cfg.model;
    for (const auto& [id, d] : world.offsets) {
        if (!is_hidden(cfg, id)) displace(m.mutable_object(id).pose, d);
    }
    m.mutable_object(cfg.task.arm).pose = world.start;
    // Wherever the scene says the arm is, that place is the sampled start pose.
    for (const auto& r : cfg.model.relations()) {
        if (r.predicate == "at" && r.subject == cfg.task.arm) m.mutable_object(r.object).pose = world.start;
    }
    return m;
}

std::map<std::string, Pose> true_poses(const ScenarioConfig& cfg, const World& world)
{
    std::map<std::string, Pose> out;
    for (const auto& o : cfg.model.objects()) out[o.id] = o.pose;
    for (const auto& [id, d] : world.offsets) displace(out.at(id), d);
    out[cfg.task.arm] = world.start;
    for (const auto& r : cfg.model.relations()) {
        if (r.predicate == "at" && r.subject == cfg.task.arm) out[r.object] = world.start;
    }
    return out;
}

SceneConditions::SceneConditions(const wm::WorldModel& model, const TaskSetup& task, const skills::Observation& obs)
    : model_(model), task_(task), obs_(obs), facts_(model.relations().begin(), model.relations().end())
{
}

bool SceneConditions::holds(const wm::Relation& r) const
{
    if (r.predicate == "at") {
        if (r.subject == task_.arm) {
            const auto* target = model_.find_object(r.object);
            return target && (obs_.ee.position - target->pose.position).norm() <= task_.arm_tolerance;
        }
        if (task_.kind == TaskKind::push && r.subject == task_.object) {
            auto it = obs_.objects.find(r.subject);
            const auto* goal = model_.find_object(r.object);
            if (it == obs_.objects.end() || !goal) return false;
            const auto [dp, da] = skills::pose_divergence(it->second, goal->pose);
            return dp < task_.position_tolerance && da < deg2rad(task_.rotation_tolerance);
        }
        if (task_.kind == TaskKind::peg && r.subject == task_.peg && r.object == task_.box) {
            return obs_.insertion_depth > task_.insertion_depth;
        }
    }
    return facts_.count(r) > 0;
}

EpisodeResult run_episode(const ScenarioConfig& cfg, std::span<const wm::SkillInstance> plan, const World& world,
                          bool keep_trace)
{
    const sim::Simulator simulator(cfg.sim);
    const double period = cfg.sim.action_period();
    const auto steps = static_cast<long>(std::llround(cfg.horizon / period));

    const wm::WorldModel model = observed_model(cfg, world);
    std::map<std::string, Pose> objects = true_poses(cfg, world);
    std::map<std::string, Vec3> sizes;
    for (const auto& o : cfg.model.objects()) {
        if (o.properties.count("size_x") && o.properties.count("size_y") && o.properties.count("size_z")) {
            sizes[o.id] = Vec3(o.property("size_x"), o.property("size_y"), o.property("size_z"));
        }
    }

    sim::EnvState env;
    if (cfg.task.kind == TaskKind::peg) {
        sim::PegEnvState peg;
        peg.box = objects.at(cfg.task.box);
        env = peg;
        sizes[cfg.task.box] = cfg.sim.peg.box_size;
    } else if (cfg.task.kind == TaskKind::push) {
        sim::PushEnvState push;
        const Pose& p = objects.at(cfg.task.object);
        push.position = p.position.head<2>();
        push.yaw = yaw_of(p.orientation);
        env = push;
    }
    sim::SimState state = simulator.initial_state(world.start, env);

    skills::Observation obs;
    obs.dt = period;
    const SceneConditions conditions(model, cfg.task, obs);
    bt::Blackboard bb;
    skills::MotionCommand initial;
    initial.goal = world.start;
    bb.set(skills::kCommand, initial);
    bb.set(skills::kObservation, obs);
    bb.set(bt::kConditions, static_cast<const bt::ConditionEvaluator*>(&conditions));
    auto root = bt::assemble_bt(plan, model);
    sim::MotionGenerator generator(world.start);

    auto refresh = [&]() {
        if (auto pose = simulator.object_pose(state)) objects[cfg.task.object] = *pose;
        if (cfg.task.kind == TaskKind::peg) objects[cfg.task.peg] = state.ee;
        objects[cfg.task.arm] = state.ee;
    };
    auto sample = [&](const Pose& reference, const Vec6& wrench) {
        rewards::StepSample s;
        s.t = state.t;
        s.ee = state.ee;
        s.reference = reference;
        s.contact_wrench = wrench;
        s.objects = objects;
        s.sizes = sizes;
        return s;
    };

    EpisodeResult out;
    rewards::EpisodeTrace trace;
    trace.dt = period;
    refresh();
    trace.steps.push_back(sample(world.start, state.contact_wrench));

    bt::Status status = bt::Status::running;
    for (long k = 0;; ++k) {
        obs.time = state.t;
        obs.ee = state.ee;
        obs.twist = state.twist;
        obs.reference = generator.reference();
        obs.contact_wrench = state.contact_wrench;
        obs.insertion_depth = simulator.insertion_depth(state);
        obs.objects.clear();
        if (cfg.task.kind == TaskKind::push) obs.objects[cfg.task.object] = objects.at(cfg.task.object);
        obs.segment_done = generator.segment_done();
        obs.overlay_done = generator.overlay_done();
        bb.get<skills::Observation>(skills::kObservation) = obs;

        status = root->tick(bb);
        if (status != bt::Status::running) break;
        if (k == steps) {
            root->halt();
            status = bt::Status::failure;
            break;
        }
        const auto& cmd = bb.get<skills::MotionCommand>(skills::kCommand);
        if (!cmd.valid()) {
            out.aborted = true;
            break;
        }
        const Pose reference = generator.step(cmd, period);
        sim::Action action;
        action.reference = reference;
        action.stiffness = cmd.stiffness;
        action.wrench = cmd.wrench;
        state = simulator.step(state, action);
        if (state.aborted) {
            out.aborted = true;
            break;
        }
        refresh();
        trace.steps.push_back(sample(reference, state.contact_wrench));
    }
    if (out.aborted && status == bt::Status::running) {
        root->halt();
        status = bt::Status::failure;
    }
    out.status = status;
    out.success = status == bt::Status::success;
    out.end_time = state.t;
    trace.success = out.success;

    // The robot rests at its final pose for the remainder of the horizon.
    if (!out.aborted) {
        const rewards::StepSample rest = sample(state.ee, Vec6::Zero());
        while (static_cast<long>(trace.steps.size()) <= steps) {
            trace.steps.push_back(rest);
            trace.steps.back().t = period * static_cast<double>(trace.steps.size() - 1);
        }
    }

    out.objectives = rewards::accumulate(trace, cfg.rewards, cfg.objectives);
    std::vector<double> force;
    force.reserve(trace.steps.size());
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        force.push_back(s.contact_wrench.head<3>().norm());
        if (i > 0) out.effort += (s.ee.position - s.reference.position).norm() * period;
    }
    out.impulse = rewards::reward_applied_wrench(force, period);
    if (keep_trace) out.trace = std::move(trace);
    return out;
}

void write_trace(const rewards::EpisodeTrace& trace, std::ostream& out)
{
    for (const auto& s : trace.steps) {
        nlohmann::json j;
        j["t"] = s.t;
        j["ee"] = wm::pose_to_json(s.ee);
        j["reference"] = wm::pose_to_json(s.reference);
        j["force"] = {s.contact_wrench[0], s.contact_wrench[1], s.contact_wrench[2]};
        nlohmann::json objs = nlohmann::json::object();
        for (const auto& [id, p] : s.objects) objs[id] = wm::pose_to_json(p);
        j["objects"] = std::move(objs);
        out << j.dump() << '\n';
    }
}

} // namespace skilltune::harness
