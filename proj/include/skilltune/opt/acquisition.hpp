#ifndef SKILLTUNE_OPT_ACQUISITION_HPP
#define SKILLTUNE_OPT_ACQUISITION_HPP

#include <random>
#include <string>

#include <Eigen/Core>

namespace skilltune::opt {

double normal_pdf(double x);
double normal_cdf(double x);

/// Maximization-frame EI; max(mu - best, 0) when sigma = 0.
double expected_improvement(double mu, double sigma, double best);

enum class Scalarization { tchebyshev, weighted_sum };
std::string to_string(Scalarization s);
Scalarization scalarization_from_string(const std::string& s);

/// Uniform sample from the probability simplex.
Eigen::VectorXd sample_simplex(Eigen::Index p, std::mt19937_64& rng);

/// Scalarizes rows of Y (maximization frame) after min-max normalizing each
/// column over the rows. Tchebyshev: -max_i w_i (1 - y_i); weighted sum: sum_i w_i y_i.
Eigen::VectorXd scalarize(const Eigen::MatrixXd& Y, const Eigen::VectorXd& w, Scalarization s);

} // namespace skilltune::opt

#endif
