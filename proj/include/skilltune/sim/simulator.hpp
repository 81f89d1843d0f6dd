#ifndef SKILLTUNE_SIM_SIMULATOR_HPP
#define SKILLTUNE_SIM_SIMULATOR_HPP

#include <array>
#include <optional>
#include <string>
#include <variant>

#include <Eigen/Core>

#include "skilltune/common/geometry.hpp"
#include "skilltune/sim/impedance.hpp"
#include "skilltune/sim/kinematics.hpp"
#include "skilltune/sim/peg_environment.hpp"
#include "skilltune/sim/push_environment.hpp"

namespace skilltune::sim {

enum class Fidelity { cartesian, arm };
std::string to_string(Fidelity f);
Fidelity fidelity_from_string(const std::string& s);

/// Controller input held for one action period: reference pose (7),
/// stiffness diagonal (6), commanded wrench (6).
struct Action {
    static constexpr std::size_t kDim = 19;

    Pose reference;
    Vec6 stiffness = Vec6::Zero();
    Vec6 wrench = Vec6::Zero();

    std::array<double, kDim> to_array() const;
    static Action from_array(const std::array<double, kDim>& v);
};

using EnvState = std::variant<std::monostate, PegEnvState, PushEnvState>;

struct SimState {
    double t = 0.0;
    Pose ee;
    Vec6 twist = Vec6::Zero(); // linear, angular (world)
    Eigen::VectorXd q;         // arm mode only
    Eigen::VectorXd qd;
    Vec6 stiffness = Vec6::Zero(); // executed (ramped) values
    Vec6 wrench = Vec6::Zero();
    EnvState env;
    Vec6 contact_wrench = Vec6::Zero(); // mean over the last action period
    bool aborted = false;

    /// Joint positions and velocities in arm mode (14 numbers); pose and twist otherwise.
    Eigen::VectorXd robot_state() const;
};

struct SimConfig {
    Fidelity fidelity = Fidelity::cartesian;
    double dt = 0.002;
    int substeps = 10;
    double ee_mass = 2.0;
    double ee_inertia = 0.05;
    ControllerConfig controller;
    Eigen::VectorXd joint_inertia = (Eigen::VectorXd(7) << 0.6, 0.6, 0.4, 0.4, 0.2, 0.1, 0.05).finished();
    Eigen::VectorXd joint_damping = Eigen::VectorXd::Constant(7, 0.5);
    PegParams peg;
    PushParams push;

    double action_period() const { return dt * substeps; }
};

class Simulator {
public:
    explicit Simulator(SimConfig config = {});

    const SimConfig& config() const { return config_; }
    const SpatialArm& arm() const { return arm_; }

    /// Robot at rest at `ee`; in arm mode the joint configuration comes from IK.
    SimState initial_state(const Pose& ee, EnvState env = {}) const;

    /// One inner control step of length config().dt.
    SimState inner_step(const SimState& s, const Action& a) const;
    /// One action period (config().substeps inner steps).
    SimState step(const SimState& s, const Action& a) const;

    /// Kinetic energy plus spring energy of the executed stiffness around the reference.
    double energy(const SimState& s, const Pose& reference) const;

    double insertion_depth(const SimState& s) const;
    std::optional<Pose> object_pose(const SimState& s) const;

private:
    Vec6 inertia_diag() const;

    SimConfig config_;
    SpatialArm arm_;
};

} // namespace skilltune::sim

#endif
