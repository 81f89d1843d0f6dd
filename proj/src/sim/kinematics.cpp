#include "skilltune/sim/kinematics.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "skilltune/common/error.hpp"

namespace skilltune::sim {

PlanarChain::PlanarChain(std::vector<double> link_lengths) : lengths_(std::move(link_lengths))
{
    if (lengths_.empty()) throw Error("planar chain needs at least one link");
}

Vec3 PlanarChain::forward(const Eigen::VectorXd& q) const
{
    double x = 0.0, y = 0.0, th = 0.0;
    for (std::size_t i = 0; i < lengths_.size(); ++i) {
        th += q[static_cast<Eigen::Index>(i)];
        x += lengths_[i] * std::cos(th);
        y += lengths_[i] * std::sin(th);
    }
    return {x, y, th};
}

Eigen::MatrixXd PlanarChain::jacobian(const Eigen::VectorXd& q) const
{
    const auto n = static_cast<Eigen::Index>(lengths_.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(6, n);
    // Column i: sum over links j >= i of the derivative of link j's tip offset.
    std::vector<double> cum(lengths_.size());
    double th = 0.0;
    for (std::size_t i = 0; i < lengths_.size(); ++i) {
        th += q[static_cast<Eigen::Index>(i)];
        cum[i] = th;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const auto l = lengths_[static_cast<std::size_t>(j)];
            J(0, i) -= l * std::sin(cum[static_cast<std::size_t>(j)]);
            J(1, i) += l * std::cos(cum[static_cast<std::size_t>(j)]);
        }
        J(5, i) = 1.0;
    }
    return J;
}

namespace {

Eigen::Isometry3d link_transform(const DhLink& l, double theta)
{
    // Rz(theta) Tz(d) Tx(a) Rx(alpha)
    Eigen::Isometry3d T = Eigen::Isometry3d::Identity();
    T.rotate(Eigen::AngleAxisd(theta, Vec3::UnitZ()));
    T.translate(Vec3(0.0, 0.0, l.d));
    T.translate(Vec3(l.a, 0.0, 0.0));
    T.rotate(Eigen::AngleAxisd(l.alpha, Vec3::UnitX()));
    return T;
}

Eigen::Isometry3d to_isometry(const Pose& p)
{
    Eigen::Isometry3d T = Eigen::Isometry3d::Identity();
    T.translate(p.position);
    T.rotate(p.orientation);
    return T;
}

} // namespace

SpatialArm::SpatialArm(std::vector<DhLink> links, Pose tool) : links_(std::move(links)), tool_(std::move(tool))
{
    if (links_.empty()) throw Error("arm needs at least one joint");
}

SpatialArm SpatialArm::seven_dof()
{
    const double h = kPi / 2.0;
    std::vector<DhLink> links = {
        {0.36, 0.0, -h}, {0.0, 0.0, h}, {0.42, 0.0, h}, {0.0, 0.0, -h},
        {0.40, 0.0, -h}, {0.0, 0.0, h}, {0.126, 0.0, 0.0},
    };
    Pose tool;
    tool.orientation = Quat(Eigen::AngleAxisd(kPi, Vec3::UnitX()));
    return SpatialArm(std::move(links), tool);
}

Pose SpatialArm::forward(const Eigen::VectorXd& q) const
{
    Eigen::Isometry3d T = Eigen::Isometry3d::Identity();
    for (std::size_t i = 0; i < links_.size(); ++i) {
        T = T * link_transform(links_[i], q[static_cast<Eigen::Index>(i)]);
    }
    T = T * to_isometry(tool_);
    Pose out;
    out.position = T.translation();
    out.orientation = Quat(T.rotation()).normalized();
    return out;
}

Eigen::MatrixXd SpatialArm::jacobian(const Eigen::VectorXd& q) const
{
    const auto n = static_cast<Eigen::Index>(links_.size());
    std::vector<Vec3> axes, origins;
    Eigen::Isometry3d T = Eigen::Isometry3d::Identity();
    for (std::size_t i = 0; i < links_.size(); ++i) {
        axes.push_back(T.rotation().col(2));
        origins.push_back(T.translation());
        T = T * link_transform(links_[i], q[static_cast<Eigen::Index>(i)]);
    }
    T = T * to_isometry(tool_);
    const Vec3 p = T.translation();
    Eigen::MatrixXd J(6, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& z = axes[static_cast<std::size_t>(i)];
        J.block<3, 1>(0, i) = z.cross(p - origins[static_cast<std::size_t>(i)]);
        J.block<3, 1>(3, i) = z;
    }
    return J;
}

std::optional<Eigen::VectorXd> SpatialArm::inverse(const Pose& target, const Eigen::VectorXd& seed, double tol,
                                                   int max_iterations) const
{
    Eigen::VectorXd q = seed;
    const double lambda = 0.05;
    for (int it = 0; it < max_iterations; ++it) {
        const Vec6 e = pose_error(forward(q), target);
        if (e.norm() < tol) return q;
        const Eigen::MatrixXd J = jacobian(q);
        const Mat6 A = J * J.transpose() + lambda * lambda * Mat6::Identity();
        Eigen::VectorXd dq = J.transpose() * A.ldlt().solve(-e);
        const double step = dq.norm();
        if (step > 0.3) dq *= 0.3 / step;
        q += dq;
    }
    if (pose_error(forward(q), target).norm() < tol) return q;
    return std::nullopt;
}

} // namespace skilltune::sim
