#ifndef SKILLTUNE_OPT_GP_HPP
#define SKILLTUNE_OPT_GP_HPP

#include <cmath>
#include <random>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "skilltune/common/error.hpp"

namespace skilltune::opt {

class GpError : public Error {
public:
    using Error::Error;
};

/// Log-space hyperparameters of a zero-mean Matern-5/2 ARD kernel.
struct GpHyper {
    Eigen::VectorXd log_lengths;
    double log_signal = 0.0; // log signal variance
    double log_noise = -6.0; // log noise variance

    static GpHyper defaults(Eigen::Index dim);
    Eigen::VectorXd pack() const;
    static GpHyper unpack(const Eigen::VectorXd& v);
};

double matern52(double r);

struct GpFitOptions {
    int restarts = 5;
    int iterations = 40;
    double min_log_length = std::log(0.01);
    double max_log_length = std::log(20.0);
    double min_log_signal = std::log(1e-3);
    double max_log_signal = std::log(1e3);
    double min_log_noise = std::log(1e-8);
    double max_log_noise = std::log(1.0);
};

class GaussianProcess {
public:
    /// Condition on data with fixed hyperparameters.
    void set(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const GpHyper& h);

    /// Maximizes the log marginal likelihood by multi-start gradient ascent.
    /// The first start is `warm` when given, else the defaults; the rest are random.
    void fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::mt19937_64& rng, const GpFitOptions& opt = {},
             const GpHyper* warm = nullptr);

    /// Posterior mean and variance (latent function, without noise).
    std::pair<double, double> predict(const Eigen::VectorXd& x) const;
    void predict(const Eigen::MatrixXd& Xq, Eigen::VectorXd& mean, Eigen::VectorXd& var) const;

    /// Log marginal likelihood and its gradient w.r.t. the packed hyperparameters.
    double log_marginal_likelihood(const GpHyper& h, Eigen::VectorXd* grad = nullptr) const;

    const GpHyper& hyper() const { return hyper_; }
    double jitter() const { return jitter_; }
    Eigen::Index size() const { return X_.rows(); }

    double kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const GpHyper& h) const;

private:
    Eigen::MatrixXd gram(const GpHyper& h) const;
    void factorize();

    Eigen::MatrixXd X_;
    Eigen::VectorXd y_;
    GpHyper hyper_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd alpha_;
    double jitter_ = 0.0;
};

} // namespace skilltune::opt

#endif
