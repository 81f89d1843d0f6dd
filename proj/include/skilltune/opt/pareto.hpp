#ifndef SKILLTUNE_OPT_PARETO_HPP
#define SKILLTUNE_OPT_PARETO_HPP

#include <span>
#include <vector>

#include "skilltune/common/sense.hpp"

namespace skilltune::opt {

/// a dominates b: no worse in every objective and strictly better in one.
bool dominates(std::span<const double> a, std::span<const double> b, std::span<const Sense> senses);

/// Indices of the non-dominated points, ordered lexicographically by their
/// objective values (ties by index). Duplicated points are all kept.
std::vector<std::size_t> pareto_front(const std::vector<std::vector<double>>& points, std::span<const Sense> senses);

/// Area dominated by the points up to `reference` (two objectives only).
/// Points that do not dominate the reference contribute nothing.
double hypervolume_2d(const std::vector<std::vector<double>>& points, std::span<const double> reference,
                      std::span<const Sense> senses);

} // namespace skilltune::opt

#endif
