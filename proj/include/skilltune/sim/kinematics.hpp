#ifndef SKILLTUNE_SIM_KINEMATICS_HPP
#define SKILLTUNE_SIM_KINEMATICS_HPP

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "skilltune/common/geometry.hpp"

namespace skilltune::sim {

/// Revolute chain in the xy plane, all joints about z.
class PlanarChain {
public:
    explicit PlanarChain(std::vector<double> link_lengths);

    std::size_t dof() const { return lengths_.size(); }
    /// (x, y, heading) of the tip.
    Vec3 forward(const Eigen::VectorXd& q) const;
    /// 6 x n geometric Jacobian (rows vx vy vz wx wy wz).
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& q) const;

private:
    std::vector<double> lengths_;
};

struct DhLink {
    double d = 0.0;
    double a = 0.0;
    double alpha = 0.0;
};

/// Spatial revolute chain with standard DH parameters and a fixed tool transform.
class SpatialArm {
public:
    SpatialArm(std::vector<DhLink> links, Pose tool);

    /// Seven-joint arm with the proportions of a light-weight collaborative arm;
    /// the tool frame points its z axis down when all joints are zero.
    static SpatialArm seven_dof();

    std::size_t dof() const { return links_.size(); }
    Pose forward(const Eigen::VectorXd& q) const;
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& q) const;

    /// Damped least-squares IK. Returns nothing if the pose error stays above tol.
    std::optional<Eigen::VectorXd> inverse(const Pose& target, const Eigen::VectorXd& seed, double tol = 1e-6,
                                           int max_iterations = 500) const;

private:
    std::vector<DhLink> links_;
    Pose tool_;
};

} // namespace skilltune::sim

#endif
