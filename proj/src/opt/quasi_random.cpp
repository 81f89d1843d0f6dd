#include "skilltune/opt/quasi_random.hpp"

#include <cmath>

namespace skilltune::opt {

std::vector<int> first_primes(std::size_t count)
{
    std::vector<int> primes;
    for (int c = 2; primes.size() < count; ++c) {
        bool prime = true;
        for (int p : primes) {
            if (p * p > c) break;
            if (c % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(c);
    }
    return primes;
}

double radical_inverse(std::uint64_t i, int base)
{
    double inv = 1.0 / base;
    double f = inv;
    double r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
        i /= static_cast<std::uint64_t>(base);
        f *= inv;
    }
    return r;
}

Eigen::MatrixXd halton(Eigen::Index n, Eigen::Index d, const Eigen::VectorXd& shift)
{
    const auto primes = first_primes(static_cast<std::size_t>(d));
    Eigen::MatrixXd out(n, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const double s = shift.size() > j ? shift[j] : 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double v = radical_inverse(static_cast<std::uint64_t>(i + 1), primes[static_cast<std::size_t>(j)]) + s;
            out(i, j) = v - std::floor(v);
        }
    }
    return out;
}

} // namespace skilltune::opt
