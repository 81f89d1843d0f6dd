#include "skilltune/skills/skills.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace skilltune::skills {

namespace {

Observation& observation(bt::Blackboard& bb)
{
    return bb.get<Observation>(kObservation);
}

MotionCommand& command(bt::Blackboard& bb)
{
    if (!bb.contains(kCommand)) bb.set(kCommand, MotionCommand{});
    return bb.get<MotionCommand>(kCommand);
}

/// Leaf with access to the blackboard when halted.
class SkillLeaf : public bt::ActionLeaf {
public:
    using bt::ActionLeaf::ActionLeaf;

protected:
    bt::Status on_tick(bt::Blackboard& bb) final
    {
        bb_ = &bb;
        return update(bb, observation(bb));
    }
    void on_halt() final
    {
        if (bb_) stop(*bb_, observation(*bb_));
        started_ = false;
    }

    virtual bt::Status update(bt::Blackboard& bb, const Observation& obs) = 0;
    /// Default preemption: hold the current end-effector pose, drop overlays.
    virtual void stop(bt::Blackboard& bb, const Observation& obs)
    {
        auto& cmd = command(bb);
        cmd.goal = obs.ee;
        cmd.overlay = {};
        ++cmd.segment;
    }

    bool started_ = false;

private:
    bt::Blackboard* bb_ = nullptr;
};

bool at(const Pose& a, const Pose& b, double tol)
{
    return (a.position - b.position).norm() <= tol;
}

class MoveLinear : public SkillLeaf {
public:
    MoveLinear(std::string name, Pose goal, double speed, Vec6 stiffness, double tolerance)
        : SkillLeaf(std::move(name)), goal_(goal), speed_(speed), stiffness_(stiffness), tol_(tolerance)
    {
    }

protected:
    bt::Status update(bt::Blackboard& bb, const Observation& obs) override
    {
        if (!started_) {
            auto& cmd = command(bb);
            cmd.goal = goal_;
            cmd.speed = speed_;
            cmd.stiffness = stiffness_;
            cmd.wrench.setZero();
            cmd.overlay = {};
            ++cmd.segment;
            started_ = true;
        }
        if (at(obs.reference, goal_, 1e-9) && at(obs.ee, goal_, tol_)) {
            started_ = false;
            return bt::Status::success;
        }
        return bt::Status::running;
    }

private:
    Pose goal_;
    double speed_;
    Vec6 stiffness_;
    double tol_;
};

/// Straight reference line toward a target computed at start; succeeds once
/// the reference has arrived and the end effector has settled.
class PushLine : public SkillLeaf {
public:
    using Target = std::function<Pose(const Observation&)>;

    PushLine(std::string name, Target target, double speed, double settle_speed, double settle_time)
        : SkillLeaf(std::move(name)), target_(std::move(target)), speed_(speed), settle_speed_(settle_speed),
          settle_time_(settle_time)
    {
    }

protected:
    bt::Status update(bt::Blackboard& bb, const Observation& obs) override
    {
        if (!started_) {
            goal_ = target_(obs);
            auto& cmd = command(bb);
            cmd.goal = goal_;
            cmd.speed = speed_;
            cmd.overlay = {};
            ++cmd.segment;
            started_ = true;
            arrived_at_ = -1.0;
        }
        if (!at(obs.reference, goal_, 1e-9)) return bt::Status::running;
        if (arrived_at_ < 0.0) arrived_at_ = obs.time;
        const bool settled = obs.twist.head<3>().norm() < settle_speed_;
        if (settled || obs.time - arrived_at_ >= settle_time_) {
            started_ = false;
            return bt::Status::success;
        }
        return bt::Status::running;
    }

private:
    Target target_;
    double speed_;
    double settle_speed_;
    double settle_time_;
    Pose goal_;
    double arrived_at_ = -1.0;
};

/// Instant command edit.
class Configure : public SkillLeaf {
public:
    using Edit = std::function<void(MotionCommand&, const Observation&)>;
    Configure(std::string name, Edit edit) : SkillLeaf(std::move(name)), edit_(std::move(edit)) {}

protected:
    bt::Status update(bt::Blackboard& bb, const Observation& obs) override
    {
        edit_(command(bb), obs);
        return bt::Status::success;
    }

private:
    Edit edit_;
};

/// Moves the reference to a new goal without touching stiffness or wrench.
class SetGoal : public SkillLeaf {
public:
    using Target = std::function<Pose(const Observation&)>;
    SetGoal(std::string name, Target target, double speed)
        : SkillLeaf(std::move(name)), target_(std::move(target)), speed_(speed)
    {
    }

protected:
    bt::Status update(bt::Blackboard& bb, const Observation& obs) override
    {
        if (!started_) {
            goal_ = target_(obs);
            auto& cmd = command(bb);
            cmd.goal = goal_;
            cmd.speed = speed_;
            ++cmd.segment;
            started_ = true;
        }
        if (at(obs.reference, goal_, 1e-9)) {
            started_ = false;
            return bt::Status::success;
        }
        return bt::Status::running;
    }

private:
    Target target_;
    double speed_;
    Pose goal_;
};

/// Runs a search overlay until its pattern is exhausted (and at least `dwell`
/// seconds have passed).
class SearchOverlay : public SkillLeaf {
public:
    SearchOverlay(std::string name, Overlay overlay, double dwell)
        : SkillLeaf(std::move(name)), overlay_(overlay), dwell_(dwell)
    {
    }

protected:
    bt::Status update(bt::Blackboard& bb, const Observation& obs) override
    {
        if (!started_) {
            command(bb).overlay = overlay_;
            start_ = obs.time;
            started_ = true;
            return bt::Status::running;
        }
        if (obs.overlay_done && obs.time - start_ >= dwell_) {
            started_ = false;
            return bt::Status::success;
        }
        return bt::Status::running;
    }

private:
    Overlay overlay_;
    double dwell_;
    double start_ = 0.0;
};

class Monitor : public bt::ActionLeaf {
public:
    using Check = std::function<bool(const Observation&)>;
    Monitor(std::string name, Check check) : bt::ActionLeaf(std::move(name)), check_(std::move(check)) {}

protected:
    bt::Status on_tick(bt::Blackboard& bb) override
    {
        return check_(observation(bb)) ? bt::Status::success : bt::Status::running;
    }

private:
    Check check_;
};

bt::NodePtr processor(const std::string& name, std::vector<bt::NodePtr> children)
{
    return std::make_unique<bt::ParallelFirstSuccess>(name, std::move(children));
}

const std::string& argument(const wm::SkillInstance& inst, std::size_t i)
{
    if (i >= inst.arguments.size()) {
        throw ConfigError("skill " + inst.skill + " expects at least " + std::to_string(i + 1) + " arguments");
    }
    return inst.arguments[i];
}

Vec6 stiffness_of(const wm::SkillInstance& inst, double trans, double rot)
{
    const double t = parameter(inst, "stiffness-trans", trans);
    const double r = parameter(inst, "stiffness-rot", rot);
    return (Vec6() << t, t, t, r, r, r).finished();
}

} // namespace

double parameter(const wm::SkillInstance& inst, const std::string& name, double fallback)
{
    auto it = inst.parameters.find(name);
    return it == inst.parameters.end() ? fallback : it->second;
}

std::pair<double, double> pose_divergence(const Pose& object, const Pose& goal)
{
    return {(object.position - goal.position).norm(), object.orientation.angularDistance(goal.orientation)};
}

bt::NodePtr expand_go_to_linear(const wm::SkillInstance& inst, const wm::WorldModel& model)
{
    const Pose goal = model.object(argument(inst, 2)).pose;
    std::vector<bt::NodePtr> kids;
    kids.push_back(std::make_unique<MoveLinear>("MoveLinear", goal, parameter(inst, "speed", 0.1),
                                                stiffness_of(inst, 1000.0, 100.0),
                                                parameter(inst, "tolerance", 0.005)));
    return processor(inst.skill + "-processor", std::move(kids));
}

bt::NodePtr expand_push(const wm::SkillInstance& inst, const wm::WorldModel& model)
{
    const std::string object = argument(inst, 1);
    const Pose goal = model.object(argument(inst, 2)).pose;
    const Pose object_start = model.object(object).pose;
    const Vec2 start_offset(parameter(inst, "start-offset-x", 0.0), parameter(inst, "start-offset-y", 0.0));
    const Vec2 goal_offset(parameter(inst, "goal-offset-x", 0.0), parameter(inst, "goal-offset-y", 0.0));
    const double speed = parameter(inst, "speed", 0.05);
    const double settle_speed = parameter(inst, "settle-speed", 0.005);
    const double settle_time = parameter(inst, "settle-time", 1.0);
    const double pos_tol = parameter(inst, "position-tolerance", 0.01);
    const double rot_tol = deg2rad(parameter(inst, "rotation-tolerance-deg", 5.0));
    const Vec6 stiffness = stiffness_of(inst, 1000.0, 100.0);

    auto displaced = [](const Observation& obs, const Vec3& centre, const Vec2& offset) {
        Pose p = obs.reference;
        p.position.x() = centre.x() + offset.x();
        p.position.y() = centre.y() + offset.y();
        return p;
    };

    std::vector<bt::NodePtr> phases;
    phases.push_back(std::make_unique<Configure>("SetPushStiffness", [stiffness](MotionCommand& c, const Observation&) {
        c.stiffness = stiffness;
        c.wrench.setZero();
    }));
    phases.push_back(std::make_unique<PushLine>(
        "MoveToPushStart",
        [=](const Observation& obs) {
            auto it = obs.objects.find(object);
            const Vec3 centre = it != obs.objects.end() ? it->second.position : object_start.position;
            return displaced(obs, centre, start_offset);
        },
        speed, settle_speed, settle_time));
    phases.push_back(std::make_unique<PushLine>(
        "PushToGoal", [=](const Observation& obs) { return displaced(obs, goal.position, goal_offset); }, speed,
        settle_speed, settle_time));

    std::vector<bt::NodePtr> kids;
    kids.push_back(std::make_unique<bt::SequenceStar>("PushPrimitives", std::move(phases)));
    kids.push_back(std::make_unique<Monitor>("ObjectAtGoal", [=](const Observation& obs) {
        auto it = obs.objects.find(object);
        if (it == obs.objects.end()) return false;
        const auto [dp, da] = pose_divergence(it->second, goal);
        return dp < pos_tol && da < rot_tol;
    }));
    return processor(inst.skill + "-processor", std::move(kids));
}

bt::NodePtr expand_peg_insertion(const wm::SkillInstance& inst, const wm::WorldModel& model)
{
    const Pose box = model.object(argument(inst, 2)).pose;
    const double force = parameter(inst, "force", 10.0);
    const double lateral = parameter(inst, "stiffness-lateral", 800.0);
    const double rot = parameter(inst, "stiffness-rot", 100.0);
    const double depth = parameter(inst, "success-depth", 0.01);
    Overlay overlay;
    overlay.kind = parameter(inst, "overlay", 0.0) >= 0.5 ? OverlayKind::circular : OverlayKind::spiral;
    overlay.radius = parameter(inst, "search-radius", 0.01);
    overlay.path_velocity = parameter(inst, "path-velocity", 0.02);
    overlay.pitch = parameter(inst, "pitch", 0.002);
    overlay.revolutions = parameter(inst, "revolutions", 1.0);
    const double dwell = parameter(inst, "dwell", 3.0);
    const double speed = parameter(inst, "speed", 0.05);

    std::vector<bt::NodePtr> primitives;
    primitives.push_back(std::make_unique<Configure>("SetStiffnessZ", [=](MotionCommand& c, const Observation&) {
        c.stiffness << lateral, lateral, 0.0, rot, rot, rot;
    }));
    primitives.push_back(std::make_unique<Configure>("ApplyForce", [=](MotionCommand& c, const Observation&) {
        c.wrench.setZero();
        c.wrench[2] = -force;
    }));
    primitives.push_back(std::make_unique<SetGoal>(
        "SetGoalHoleCenter",
        [=](const Observation& obs) {
            Pose p = obs.reference;
            p.position.x() = box.position.x();
            p.position.y() = box.position.y();
            return p;
        },
        speed));
    primitives.push_back(std::make_unique<SearchOverlay>("SearchOverlay", overlay, dwell));

    std::vector<bt::NodePtr> kids;
    kids.push_back(std::make_unique<bt::SequenceStar>("PegPrimitives", std::move(primitives)));
    kids.push_back(std::make_unique<Monitor>("InsertionMonitor",
                                             [depth](const Observation& obs) { return obs.insertion_depth > depth; }));
    return processor(inst.skill + "-processor", std::move(kids));
}

void SkillRegistry::add(const std::string& name, SkillEntry entry)
{
    if (!entry.expand) throw ConfigError("skill '" + name + "' registered without an expansion");
    entries_[name] = std::move(entry);
}

const SkillEntry* SkillRegistry::find(const std::string& name) const
{
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> SkillRegistry::names() const
{
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
}

void SkillRegistry::check(const wm::SkillTemplate& t) const
{
    const auto* e = find(t.name);
    if (!e) throw ConfigError("no registered implementation for skill '" + t.name + "'");
    for (const auto& p : t.parameters) {
        if (std::find(e->parameters.begin(), e->parameters.end(), p.name) == e->parameters.end()) {
            throw ConfigError("skill '" + t.name + "' has no parameter named '" + p.name + "'");
        }
    }
}

const SkillRegistry& SkillRegistry::builtin()
{
    static const SkillRegistry registry = [] {
        SkillRegistry r;
        r.add("GoToLinear", {expand_go_to_linear, {"speed", "stiffness-trans", "stiffness-rot", "tolerance"}});
        r.add("Push", {expand_push,
                       {"start-offset-x", "start-offset-y", "goal-offset-x", "goal-offset-y", "speed", "settle-speed",
                        "settle-time", "position-tolerance", "rotation-tolerance-deg", "stiffness-trans",
                        "stiffness-rot"}});
        r.add("PegInsertion", {expand_peg_insertion,
                               {"force", "search-radius", "path-velocity", "stiffness-lateral", "stiffness-rot",
                                "success-depth", "overlay", "pitch", "revolutions", "dwell", "speed"}});
        return r;
    }();
    return registry;
}

} // namespace skilltune::skills
