#include "skilltune/sim/simulator.hpp"

#include <cmath>

#include "skilltune/common/error.hpp"

namespace skilltune::sim {

std::string to_string(Fidelity f)
{
    return f == Fidelity::arm ? "arm" : "cartesian";
}

Fidelity fidelity_from_string(const std::string& s)
{
    if (s == "cartesian") return Fidelity::cartesian;
    if (s == "arm") return Fidelity::arm;
    throw ConfigError("unknown fidelity mode '" + s + "'");
}

std::array<double, Action::kDim> Action::to_array() const
{
    std::array<double, kDim> v{};
    const auto p = reference.to_array();
    std::copy(p.begin(), p.end(), v.begin());
    for (int i = 0; i < 6; ++i) {
        v[7 + static_cast<std::size_t>(i)] = stiffness[i];
        v[13 + static_cast<std::size_t>(i)] = wrench[i];
    }
    return v;
}

Action Action::from_array(const std::array<double, kDim>& v)
{
    Action a;
    std::array<double, 7> p{};
    std::copy(v.begin(), v.begin() + 7, p.begin());
    a.reference = Pose::from_array(p);
    for (int i = 0; i < 6; ++i) {
        a.stiffness[i] = v[7 + static_cast<std::size_t>(i)];
        a.wrench[i] = v[13 + static_cast<std::size_t>(i)];
    }
    return a;
}

Eigen::VectorXd SimState::robot_state() const
{
    if (q.size() > 0) {
        Eigen::VectorXd out(q.size() + qd.size());
        out << q, qd;
        return out;
    }
    Eigen::VectorXd out(13);
    const auto p = ee.to_array();
    for (int i = 0; i < 7; ++i) out[i] = p[static_cast<std::size_t>(i)];
    out.tail<6>() = twist;
    return out;
}

Simulator::Simulator(SimConfig config) : config_(std::move(config)), arm_(SpatialArm::seven_dof())
{
    if (!(config_.dt > 0.0) || config_.substeps < 1) throw ConfigError("simulation step must be positive");
    if (!(config_.ee_mass > 0.0) || !(config_.ee_inertia > 0.0)) throw ConfigError("end-effector inertia must be positive");
    if (config_.fidelity == Fidelity::arm &&
        (config_.joint_inertia.size() != 7 || config_.joint_damping.size() != 7)) {
        throw ConfigError("arm mode needs 7 joint inertias and dampings");
    }
}

Vec6 Simulator::inertia_diag() const
{
    Vec6 m;
    m << config_.ee_mass, config_.ee_mass, config_.ee_mass, config_.ee_inertia, config_.ee_inertia,
        config_.ee_inertia;
    return m;
}

SimState Simulator::initial_state(const Pose& ee, EnvState env) const
{
    SimState s;
    s.ee = ee;
    s.env = std::move(env);
    if (config_.fidelity == Fidelity::arm) {
        Eigen::VectorXd seed(7);
        seed << 0.0, 0.6, 0.0, -1.2, 0.0, 0.8, 0.0;
        auto q = arm_.inverse(ee, seed, 1e-9);
        if (!q) throw ConfigError("start pose is outside the arm workspace");
        s.q = *q;
        s.qd = Eigen::VectorXd::Zero(7);
        s.ee = arm_.forward(s.q);
    }
    return s;
}

SimState Simulator::inner_step(const SimState& s, const Action& a) const
{
    if (s.aborted) return s;
    const double dt = config_.dt;
    SimState n = s;
    n.stiffness = ramp_toward(s.stiffness, a.stiffness, config_.controller.stiffness_rate, dt);
    n.wrench = ramp_toward(s.wrench, a.wrench, config_.controller.wrench_rate, dt);
    const Mat6 K = n.stiffness.asDiagonal();
    const Mat6 D =
        damping_for(n.stiffness, inertia_diag(), config_.controller.damping_ratio, config_.controller.damping_floor);
    const Vec6 x_e = pose_error(s.ee, a.reference);

    const Vec6 applied = impedance_wrench(x_e, s.twist, K, D) + n.wrench;

    Vec6 contact = Vec6::Zero();
    if (auto* peg = std::get_if<PegEnvState>(&s.env)) {
        const auto c = peg_contact(config_.peg, *peg, s.ee.position, s.twist.head<3>(), applied.head<3>(),
                                   config_.ee_mass, dt);
        contact.head<3>() = c.force;
        std::get<PegEnvState>(n.env).in_hole = c.in_hole;
    } else if (auto* push = std::get_if<PushEnvState>(&s.env)) {
        const auto c = push_step(config_.push, *push, s.ee, s.twist, dt);
        contact.head<3>() = c.force;
        contact.tail<3>() = c.torque;
        n.env = c.next;
    }

    if (config_.fidelity == Fidelity::cartesian) {
        const Vec6 total = applied + contact;
        n.twist.head<3>() += total.head<3>() / config_.ee_mass * dt;
        n.twist.tail<3>() += total.tail<3>() / config_.ee_inertia * dt;
        n.ee.position += n.twist.head<3>() * dt;
        n.ee.orientation = integrate_orientation(s.ee.orientation, n.twist.tail<3>(), dt);
    } else {
        const Eigen::MatrixXd J = arm_.jacobian(s.q);
        Eigen::VectorXd tau = impedance_torque(s.qd, x_e, K, D, J) + external_wrench_torque(n.wrench + contact, J);
        tau -= config_.joint_damping.cwiseProduct(s.qd);
        n.qd = s.qd + tau.cwiseQuotient(config_.joint_inertia) * dt;
        n.q = s.q + n.qd * dt;
        n.ee = arm_.forward(n.q);
        n.twist = arm_.jacobian(n.q) * n.qd;
    }
    n.contact_wrench = contact;
    n.t = s.t + dt;

    const bool finite = n.ee.position.allFinite() && n.ee.orientation.coeffs().allFinite() && n.twist.allFinite() &&
                        (n.q.size() == 0 || (n.q.allFinite() && n.qd.allFinite()));
    if (!finite) {
        SimState bad = s;
        bad.aborted = true;
        return bad;
    }
    return n;
}

SimState Simulator::step(const SimState& s, const Action& a) const
{
    SimState cur = s;
    Vec6 mean = Vec6::Zero();
    for (int i = 0; i < config_.substeps; ++i) {
        cur = inner_step(cur, a);
        if (cur.aborted) return cur;
        mean += cur.contact_wrench;
    }
    cur.contact_wrench = mean / config_.substeps;
    return cur;
}

double Simulator::energy(const SimState& s, const Pose& reference) const
{
    const Vec6 x_e = pose_error(s.ee, reference);
    double e = 0.0;
    for (int i = 0; i < 6; ++i) e += 0.5 * s.stiffness[i] * x_e[i] * x_e[i];
    if (config_.fidelity == Fidelity::cartesian) {
        const Vec6 m = inertia_diag();
        for (int i = 0; i < 6; ++i) e += 0.5 * m[i] * s.twist[i] * s.twist[i];
    } else {
        e += 0.5 * s.qd.dot(config_.joint_inertia.cwiseProduct(s.qd));
    }
    return e;
}

double Simulator::insertion_depth(const SimState& s) const
{
    if (const auto* peg = std::get_if<PegEnvState>(&s.env)) {
        return sim::insertion_depth(config_.peg, *peg, s.ee.position);
    }
    return 0.0;
}

std::optional<Pose> Simulator::object_pose(const SimState& s) const
{
    if (const auto* push = std::get_if<PushEnvState>(&s.env)) return sim::object_pose(config_.push, *push);
    if (const auto* peg = std::get_if<PegEnvState>(&s.env)) return peg->box;
    return std::nullopt;
}

} // namespace skilltune::sim
