#ifndef SKILLTUNE_COMMON_SENSE_HPP
#define SKILLTUNE_COMMON_SENSE_HPP

#include <string>

namespace skilltune {

/// Optimization direction of an objective.
enum class Sense { maximize, minimize };

std::string to_string(Sense s);
Sense sense_from_string(const std::string& s);

/// +1 for maximize, -1 for minimize: multiplies a value into the maximization frame.
inline double sign(Sense s)
{
    return s == Sense::maximize ? 1.0 : -1.0;
}

} // namespace skilltune

#endif
