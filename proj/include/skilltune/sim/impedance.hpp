#ifndef SKILLTUNE_SIM_IMPEDANCE_HPP
#define SKILLTUNE_SIM_IMPEDANCE_HPP

#include <Eigen/Core>

#include "skilltune/common/geometry.hpp"

namespace skilltune::sim {

/// tau_c = J^T (-K x_e - D J qdot)
Eigen::VectorXd impedance_torque(const Eigen::VectorXd& qdot, const Vec6& x_e, const Mat6& K, const Mat6& D,
                                 const Eigen::MatrixXd& J);

/// tau_ext = J^T F_ext
Eigen::VectorXd external_wrench_torque(const Vec6& wrench, const Eigen::MatrixXd& J);

/// Task-space spring-damper wrench -K x_e - D v.
Vec6 impedance_wrench(const Vec6& x_e, const Vec6& twist, const Mat6& K, const Mat6& D);

/// D = 2 zeta sqrt(k m) per axis, at least `floor`.
Mat6 damping_for(const Vec6& stiffness, const Vec6& inertia, double zeta, const Vec6& floor);

/// Moves each entry of `current` toward `target` by at most rate*dt.
Vec6 ramp_toward(const Vec6& current, const Vec6& target, const Vec6& rate, double dt);

struct ControllerConfig {
    double damping_ratio = 1.0;
    Vec6 damping_floor = (Vec6() << 5, 5, 5, 0.2, 0.2, 0.2).finished();
    Vec6 stiffness_rate = (Vec6() << 2000, 2000, 2000, 200, 200, 200).finished(); // per second
    Vec6 wrench_rate = (Vec6() << 50, 50, 50, 5, 5, 5).finished();                 // per second
};

} // namespace skilltune::sim

#endif
