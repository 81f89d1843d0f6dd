#include "skilltune/common/sense.hpp"

#include "skilltune/common/error.hpp"

namespace skilltune {

std::string to_string(Sense s)
{
    return s == Sense::maximize ? "maximize" : "minimize";
}

Sense sense_from_string(const std::string& s)
{
    if (s == "maximize" || s == "max") return Sense::maximize;
    if (s == "minimize" || s == "min") return Sense::minimize;
    throw ConfigError("unknown optimization sense '" + s + "'");
}

} // namespace skilltune
