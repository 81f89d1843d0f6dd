#ifndef SKILLTUNE_OPT_QUASI_RANDOM_HPP
#define SKILLTUNE_OPT_QUASI_RANDOM_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace skilltune::opt {

std::vector<int> first_primes(std::size_t count);

/// Van der Corput radical inverse of i in the given base.
double radical_inverse(std::uint64_t i, int base);

/// n x d Halton points (indices 1..n), each coordinate shifted modulo 1.
Eigen::MatrixXd halton(Eigen::Index n, Eigen::Index d, const Eigen::VectorXd& shift);

} // namespace skilltune::opt

#endif
