#include "skilltune/sim/impedance.hpp"

#include <algorithm>
#include <cmath>

namespace skilltune::sim {

Eigen::VectorXd impedance_torque(const Eigen::VectorXd& qdot, const Vec6& x_e, const Mat6& K, const Mat6& D,
                                 const Eigen::MatrixXd& J)
{
    const Vec6 v = J * qdot;
    return J.transpose() * (-K * x_e - D * v);
}

Eigen::VectorXd external_wrench_torque(const Vec6& wrench, const Eigen::MatrixXd& J)
{
    return J.transpose() * wrench;
}

Vec6 impedance_wrench(const Vec6& x_e, const Vec6& twist, const Mat6& K, const Mat6& D)
{
    return -K * x_e - D * twist;
}

Mat6 damping_for(const Vec6& stiffness, const Vec6& inertia, double zeta, const Vec6& floor)
{
    Mat6 D = Mat6::Zero();
    for (int i = 0; i < 6; ++i) {
        D(i, i) = std::max(floor[i], 2.0 * zeta * std::sqrt(std::max(0.0, stiffness[i]) * inertia[i]));
    }
    return D;
}

Vec6 ramp_toward(const Vec6& current, const Vec6& target, const Vec6& rate, double dt)
{
    Vec6 out;
    for (int i = 0; i < 6; ++i) {
        const double step = rate[i] * dt;
        out[i] = current[i] + std::clamp(target[i] - current[i], -step, step);
    }
    return out;
}

} // namespace skilltune::sim
