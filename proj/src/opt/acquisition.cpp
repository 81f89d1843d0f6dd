#include "skilltune/opt/acquisition.hpp"

#include <algorithm>
#include <cmath>

#include "skilltune/common/error.hpp"

namespace skilltune::opt {

double normal_pdf(double x)
{
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double expected_improvement(double mu, double sigma, double best)
{
    if (sigma <= 0.0) return std::max(mu - best, 0.0);
    const double g = (mu - best) / sigma;
    return std::max(0.0, (mu - best) * normal_cdf(g) + sigma * normal_pdf(g));
}

std::string to_string(Scalarization s)
{
    return s == Scalarization::tchebyshev ? "tchebyshev" : "weighted-sum";
}

Scalarization scalarization_from_string(const std::string& s)
{
    if (s == "tchebyshev" || s == "chebyshev") return Scalarization::tchebyshev;
    if (s == "weighted-sum" || s == "linear") return Scalarization::weighted_sum;
    throw ConfigError("unknown scalarization '" + s + "'");
}

Eigen::VectorXd sample_simplex(Eigen::Index p, std::mt19937_64& rng)
{
    std::exponential_distribution<double> e(1.0);
    Eigen::VectorXd w(p);
    for (Eigen::Index i = 0; i < p; ++i) w[i] = e(rng);
    return w / w.sum();
}

Eigen::VectorXd scalarize(const Eigen::MatrixXd& Y, const Eigen::VectorXd& w, Scalarization s)
{
    const auto n = Y.rows();
    const auto p = Y.cols();
    Eigen::MatrixXd N(n, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double lo = Y.col(j).minCoeff();
        const double hi = Y.col(j).maxCoeff();
        const double span = hi - lo;
        if (span > 0.0) N.col(j) = (Y.col(j).array() - lo) / span;
        else N.col(j).setOnes();
    }
    Eigen::VectorXd g(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (s == Scalarization::weighted_sum) {
            g[i] = N.row(i).dot(w);
        } else {
            double worst = 0.0;
            for (Eigen::Index j = 0; j < p; ++j) worst = std::max(worst, w[j] * (1.0 - N(i, j)));
            g[i] = -worst;
        }
    }
    return g;
}

} // namespace skilltune::opt
